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

#include <vector>

#include "proplace/network.hpp"

namespace proplace {

/// The ∞-norm ball of radius `delta` around a network's parameters.
class ModelShiftSet {
 public:
  /// Throws kInvalidShift unless `delta` is finite and > 0.
  explicit ModelShiftSet(double delta);

  double delta() const { return delta_; }

 private:
  double delta_;
};

struct OutputBound {
  double l;
  double u;
};

/// Interval-valued copy of a network: every weight and bias becomes a
/// closed interval.
class IntervalNetwork {
 public:
  IntervalNetwork(const Network& base, double radius);

  const Network& base() const { return base_; }
  double radius() const { return radius_; }
  int num_layers() const { return base_.num_layers(); }
  int input_dim() const { return base_.input_dim(); }

  const Mat& weight_lower(int layer) const { return w_lower_.at(layer); }
  const Mat& weight_upper(int layer) const { return w_upper_.at(layer); }
  const Vec& bias_lower(int layer) const { return b_lower_.at(layer); }
  const Vec& bias_upper(int layer) const { return b_upper_.at(layer); }

 private:
  Network base_;
  double radius_;
  std::vector<Mat> w_lower_, w_upper_;
  std::vector<Vec> b_lower_, b_upper_;
};

/// Interval abstraction of `net` under the shift set.
IntervalNetwork abstract(const Network& net, const ModelShiftSet& shifts);

/// Degenerate abstraction (zero-width intervals) of a fixed network.
IntervalNetwork exact_intervals(const Network& net);

/// Pre-activation bounds of every affine layer.
struct LayerBounds {
  std::vector<Vec> lower;
  std::vector<Vec> upper;

  OutputBound output() const { return {lower.back()(0), upper.back()(0)}; }
};

/// Interval arithmetic over an input box; ReLU maps [a,b] to [max(a,0), max(b,0)].
LayerBounds propagate_layer_bounds(const IntervalNetwork& inet, const Vec& x_lower, const Vec& x_upper);

/// Sound bounds on the logit of every shifted model at the point `x`.
OutputBound propagate_bounds(const IntervalNetwork& inet, const Vec& x);

}  // namespace proplace
