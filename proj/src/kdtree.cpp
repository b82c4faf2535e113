// Copyright 2026 The proplace Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "proplace/kdtree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "proplace/errors.hpp"

namespace proplace {

double distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b, Metric metric) {
  if (a.size() != b.size()) throw Error(ErrorCode::kInputShape, "distance: dimension mismatch");
  if (a.size() == 0) return 0.0;
  if (metric == Metric::kL1) return (a - b).cwiseAbs().sum() / static_cast<double>(a.size());
  return (a - b).norm();
}

KdTree::KdTree(std::vector<Eigen::VectorXd> points, std::vector<int> ids, Metric metric, int leaf_size)
    : points_(std::move(points)), ids_(std::move(ids)), metric_(metric), leaf_size_(std::max(1, leaf_size)) {
  if (points_.empty()) throw Error(ErrorCode::kNoCandidates, "k-d tree needs at least one point");
  if (ids_.size() != points_.size()) throw Error(ErrorCode::kInputShape, "k-d tree: ids and points differ in length");
  dim_ = static_cast<int>(points_[0].size());
  for (const auto& p : points_) {
    if (p.size() != dim_) throw Error(ErrorCode::kInputShape, "k-d tree: ragged points");
  }
  order_.resize(points_.size());
  std::iota(order_.begin(), order_.end(), 0);
  build(0, size());
}

int KdTree::build(int begin, int end) {
  Node node;
  node.begin = begin;
  node.end = end;
  node.lower = points_[order_[begin]];
  node.upper = node.lower;
  for (int i = begin + 1; i < end; ++i) {
    node.lower = node.lower.cwiseMin(points_[order_[i]]);
    node.upper = node.upper.cwiseMax(points_[order_[i]]);
  }
  const int index = static_cast<int>(nodes_.size());
  nodes_.push_back(node);
  if (end - begin <= leaf_size_ || dim_ == 0) return index;

  Eigen::Index axis = 0;
  const double spread = (node.upper - node.lower).maxCoeff(&axis);
  if (spread <= 0.0) return index;  // all points coincide
  const int mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end, [&](int a, int b) {
    const double pa = points_[a](axis), pb = points_[b](axis);
    return pa < pb || (pa == pb && a < b);
  });
  const int left = build(begin, mid);
  const int right = build(mid, end);
  nodes_[index].left = left;
  nodes_[index].right = right;
  return index;
}

double KdTree::point_key(const Eigen::VectorXd& q, int slot) const {
  const Eigen::VectorXd& p = points_[slot];
  double key = 0.0;
  for (int j = 0; j < dim_; ++j) {
    const double d = std::abs(p(j) - q(j));
    key += metric_ == Metric::kL1 ? d : d * d;
  }
  return key;
}

// Per-axis gaps never exceed the matching point differences and are summed
// in the same order, so the box key is a lower bound even after rounding.
double KdTree::box_key(const Eigen::VectorXd& q, const Node& node) const {
  double key = 0.0;
  for (int j = 0; j < dim_; ++j) {
    double d = 0.0;
    if (q(j) < node.lower(j)) d = node.lower(j) - q(j);
    else if (q(j) > node.upper(j)) d = q(j) - node.upper(j);
    key += metric_ == Metric::kL1 ? d : d * d;
  }
  return key;
}

double KdTree::finish(double key) const {
  if (metric_ == Metric::kL1) return dim_ == 0 ? 0.0 : key / dim_;
  return std::sqrt(key);
}

KdTree::Cursor::Cursor(const KdTree* tree, Eigen::VectorXd query) : tree_(tree), query_(std::move(query)) {
  heap_.push({tree_->box_key(query_, tree_->nodes_[0]), false, 0});
}

std::optional<Neighbour> KdTree::Cursor::next() {
  while (!heap_.empty()) {
    const Entry top = heap_.top();
    heap_.pop();
    if (top.is_point) return Neighbour{top.index, tree_->ids_[top.index], tree_->finish(top.key)};
    const Node& node = tree_->nodes_[top.index];
    if (node.left < 0) {
      for (int i = node.begin; i < node.end; ++i) {
        const int slot = tree_->order_[i];
        heap_.push({tree_->point_key(query_, slot), true, slot});
      }
    } else {
      heap_.push({tree_->box_key(query_, tree_->nodes_[node.left]), false, node.left});
      heap_.push({tree_->box_key(query_, tree_->nodes_[node.right]), false, node.right});
    }
  }
  return std::nullopt;
}

KdTree::Cursor KdTree::query(const Eigen::VectorXd& q) const {
  if (q.size() != dim_) throw Error(ErrorCode::kInputShape, "k-d tree query: dimension mismatch");
  return Cursor(this, q);
}

std::vector<Neighbour> KdTree::nearest(const Eigen::VectorXd& q, int k) const {
  std::vector<Neighbour> out;
  Cursor cursor = query(q);
  while (static_cast<int>(out.size()) < k) {
    auto n = cursor.next();
    if (!n) break;
    out.push_back(*n);
  }
  return out;
}

}  // namespace proplace
