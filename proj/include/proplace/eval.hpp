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

#include <string>
#include <vector>

#include "proplace/interval.hpp"
#include "proplace/kdtree.hpp"
#include "proplace/network.hpp"

namespace proplace {

/// Mean absolute feature difference, sum |x_i - y_i| / d.
double l1_distance(const Vec& x, const Vec& x_prime);

/// Local outlier factor against a fixed reference set (Euclidean). Scores
/// near 1 are inliers; larger values are outliers. Follows the usual
/// convention of adding 1e-10 to mean reachability distances, so a query
/// coinciding with a cluster of duplicates scores exactly 1.
class Lof {
 public:
  /// Throws kInsufficientReference unless the reference has more than k points.
  explicit Lof(const Mat& reference, int k = 10);

  double score(const Vec& point) const;
  int k() const { return k_; }

 private:
  int k_;
  KdTree tree_;
  Vec k_distance_;
  Vec lrd_;
};

/// Percentage of (CE, model) pairs where the model assigns class 1.
double validity_rate(const std::vector<Vec>& ces, const std::vector<Network>& models);

/// Percentage of CEs that certify Δ-robust on `net`.
double v_delta_rate(const std::vector<Vec>& ces, const Network& net, const ModelShiftSet& shifts);

struct InstanceMetrics {
  int index = 0;
  double l1 = 0.0;
  double lof = 0.0;
  /// Retrained models classifying the CE as class 1.
  int valid_models = 0;
  int total_models = 0;
  bool delta_robust = false;
  double worst_logit = 0.0;
};

struct MetricsReport {
  std::vector<InstanceMetrics> per_instance;
  double l1_mean = 0.0;
  double lof_mean = 0.0;
  double vr_percent = 0.0;
  double v_delta_percent = 0.0;
};

/// Scores every CE. `inputs[i]` is the original point for `ces[i]`.
MetricsReport evaluate(const std::vector<Vec>& inputs, const std::vector<Vec>& ces, const Network& net,
                       const ModelShiftSet& shifts, const std::vector<Network>& retrained, const Lof& lof);

/// Aligned table with columns vr, vΔ, ℓ1 and lof.
std::string format_table(const std::string& label, const MetricsReport& report);

}  // namespace proplace
