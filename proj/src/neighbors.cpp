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

#include "proplace/neighbors.hpp"

#include "proplace/errors.hpp"
#include "proplace/milp.hpp"

namespace proplace {

KdTree build_tree(const Dataset& data, const Network& net, int desired_class, Metric metric) {
  if (data.dim() != net.input_dim()) throw Error(ErrorCode::kInputShape, "build_tree: data and network disagree on dimension");
  std::vector<Vec> points;
  std::vector<int> ids;
  for (int i = 0; i < data.size(); ++i) {
    Vec p = data.point(i);
    if (net.predict(p) == desired_class) {
      points.push_back(std::move(p));
      ids.push_back(i);
    }
  }
  if (points.empty()) {
    throw Error(ErrorCode::kNoCandidates, "no dataset point is predicted as class " + std::to_string(desired_class));
  }
  return KdTree(std::move(points), std::move(ids), metric);
}

CachedRobustness::CachedRobustness(Network net, ModelShiftSet shifts, CertifyOptions options)
    : net_(std::move(net)), shifts_(shifts), options_(std::move(options)) {}

bool CachedRobustness::operator()(int slot, const Vec& point) {
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(slot); it != cache_.end()) return it->second.robust;
  }
  // Interval bounds settle most candidates without a solve.
  const OutputBound b = propagate_bounds(abstract(net_, shifts_), point);
  Verdict verdict{b.l >= 0.0, b.l};
  if (!verdict.robust && b.u >= 0.0) {
    const Certificate cert = certify_delta_robust(net_, shifts_, point, options_);
    verdict = {cert.robust, cert.worst_logit};
    std::lock_guard lock(mutex_);
    ++milp_calls_;
  }
  std::lock_guard lock(mutex_);
  cache_.emplace(slot, verdict);
  return verdict.robust;
}

std::optional<double> CachedRobustness::margin(int slot) const {
  std::lock_guard lock(mutex_);
  const auto it = cache_.find(slot);
  if (it == cache_.end() || !it->second.robust) return std::nullopt;
  return it->second.margin;
}

int CachedRobustness::milp_calls() const {
  std::lock_guard lock(mutex_);
  return milp_calls_;
}

RobustNeighbours robust_knn(const Vec& x, int k, const KdTree& tree, const RobustnessTest& test) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "robust_knn: k must be at least 1");
  RobustNeighbours out;
  KdTree::Cursor cursor = tree.query(x);
  while (static_cast<int>(out.points.size()) < k) {
    const auto n = cursor.next();
    if (!n) throw InsufficientRobustNeighboursError(static_cast<int>(out.points.size()), k);
    ++out.examined;
    const Vec& p = tree.point(n->slot);
    if (!test(n->slot, p)) continue;
    out.points.push_back(p);
    out.ids.push_back(n->id);
    out.slots.push_back(n->slot);
    out.distances.push_back(n->distance);
  }
  return out;
}

Vec PlausibleRegion::lower() const {
  Vec lo = vertices.front();
  for (const Vec& v : vertices) lo = lo.cwiseMin(v);
  return lo;
}

Vec PlausibleRegion::upper() const {
  Vec hi = vertices.front();
  for (const Vec& v : vertices) hi = hi.cwiseMax(v);
  return hi;
}

bool PlausibleRegion::contains(const Vec& y) const {
  if (y.size() != dim()) throw Error(ErrorCode::kInputShape, "region membership: dimension mismatch");
  milp::Model model;
  std::vector<milp::VarId> lambda;
  milp::LinearExpr total;
  for (std::size_t l = 0; l < vertices.size(); ++l) {
    lambda.push_back(model.add_continuous("lambda" + std::to_string(l), 0.0, 1.0));
    total.add(lambda.back(), 1.0);
  }
  model.add_constraint(total, milp::Comparator::kEqual, 1.0, "convexity");
  for (int j = 0; j < dim(); ++j) {
    milp::LinearExpr coord;
    for (std::size_t l = 0; l < vertices.size(); ++l) coord.add(lambda[l], vertices[l](j));
    model.add_constraint(coord, milp::Comparator::kEqual, y(j), "coord" + std::to_string(j));
  }
  return milp::solve_lp(model).status == milp::SolveStatus::kOptimal;
}

PlausibleRegion make_region(const Vec& x, const std::vector<Vec>& robust_neighbours) {
  if (robust_neighbours.empty()) throw Error(ErrorCode::kInvalidArgument, "plausible region needs at least one neighbour");
  PlausibleRegion region;
  region.vertices.push_back(x);
  for (const Vec& v : robust_neighbours) {
    if (v.size() != x.size()) throw Error(ErrorCode::kInputShape, "plausible region: dimension mismatch");
    region.vertices.push_back(v);
  }
  return region;
}

}  // namespace proplace
