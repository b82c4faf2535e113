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

#include <functional>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "proplace/certify.hpp"
#include "proplace/dataset.hpp"
#include "proplace/interval.hpp"
#include "proplace/kdtree.hpp"
#include "proplace/network.hpp"

namespace proplace {

/// Tree over the dataset points the network assigns to `desired_class`.
/// Ids are dataset row indices. Throws kNoCandidates if there are none.
KdTree build_tree(const Dataset& data, const Network& net, int desired_class = 1, Metric metric = Metric::kL1);

/// Decides Δ-robustness of the tree point at `slot`.
using RobustnessTest = std::function<bool(int slot, const Vec& point)>;

/// Δ-robustness test with the interval pre-filter and a per-slot cache.
/// Safe to share between threads.
class CachedRobustness {
 public:
  CachedRobustness(Network net, ModelShiftSet shifts, CertifyOptions options = {});

  bool operator()(int slot, const Vec& point);

  /// A certified lower bound on the worst-case logit of a slot already
  /// found robust: the interval bound, or the exact value when a solve ran.
  std::optional<double> margin(int slot) const;

  /// Number of MILP certifications performed so far.
  int milp_calls() const;

 private:
  Network net_;
  ModelShiftSet shifts_;
  CertifyOptions options_;
  mutable std::mutex mutex_;
  struct Verdict {
    bool robust;
    double margin;
  };
  std::unordered_map<int, Verdict> cache_;
  int milp_calls_ = 0;
};

struct RobustNeighbours {
  std::vector<Vec> points;
  std::vector<int> ids;
  std::vector<int> slots;
  std::vector<double> distances;
  /// Candidates inspected, robust or not.
  int examined = 0;
};

/// The k nearest tree points that pass `test`, nearest first. Throws
/// InsufficientRobustNeighboursError when fewer than k exist.
RobustNeighbours robust_knn(const Vec& x, int k, const KdTree& tree, const RobustnessTest& test);

/// Convex hull of the input and its robust neighbours, kept as a vertex list.
struct PlausibleRegion {
  std::vector<Vec> vertices;  // vertices[0] is the input

  int dim() const { return static_cast<int>(vertices.front().size()); }
  Vec lower() const;
  Vec upper() const;
  /// Membership via an LP over convex-combination weights.
  bool contains(const Vec& y) const;
};

PlausibleRegion make_region(const Vec& x, const std::vector<Vec>& robust_neighbours);

}  // namespace proplace
