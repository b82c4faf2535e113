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

#pragma once

#include <Eigen/Dense>

#include <optional>
#include <queue>
#include <vector>

namespace proplace {

enum class Metric { kL1, kL2 };

/// Distance used for neighbour ranking. L1 is averaged over features so it
/// agrees with the proximity cost.
double distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b, Metric metric);

struct Neighbour {
  int slot;  // position in the tree's point list
  int id;    // caller-supplied identifier (dataset row)
  double distance;
};

/// Static k-d tree with best-first incremental nearest-neighbour queries.
/// Ties are broken by position, so results are deterministic.
class KdTree {
 public:
  KdTree(std::vector<Eigen::VectorXd> points, std::vector<int> ids, Metric metric = Metric::kL1,
         int leaf_size = 8);

  int size() const { return static_cast<int>(points_.size()); }
  int dim() const { return dim_; }
  Metric metric() const { return metric_; }
  const Eigen::VectorXd& point(int slot) const { return points_.at(slot); }
  int id(int slot) const { return ids_.at(slot); }

  /// Yields points in non-decreasing distance from the query.
  class Cursor {
   public:
    std::optional<Neighbour> next();

   private:
    friend class KdTree;
    struct Entry {
      double key;
      bool is_point;
      int index;
      bool operator>(const Entry& o) const {
        if (key != o.key) return key > o.key;
        if (is_point != o.is_point) return is_point;  // nodes first
        return index > o.index;
      }
    };
    Cursor(const KdTree* tree, Eigen::VectorXd query);

    const KdTree* tree_;
    Eigen::VectorXd query_;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap_;
  };

  Cursor query(const Eigen::VectorXd& q) const;
  std::vector<Neighbour> nearest(const Eigen::VectorXd& q, int k) const;

 private:
  struct Node {
    Eigen::VectorXd lower, upper;
    int begin, end;  // range in order_
    int left = -1, right = -1;
  };

  int build(int begin, int end);
  // Raw ranking key: sum of |diff| for L1, squared norm for L2.
  double point_key(const Eigen::VectorXd& q, int slot) const;
  double box_key(const Eigen::VectorXd& q, const Node& node) const;
  double finish(double key) const;

  std::vector<Eigen::VectorXd> points_;
  std::vector<int> ids_;
  Metric metric_;
  int leaf_size_;
  int dim_;
  std::vector<int> order_;
  std::vector<Node> nodes_;
};

}  // namespace proplace
