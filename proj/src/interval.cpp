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

#include "proplace/interval.hpp"

#include <algorithm>
#include <cmath>

namespace proplace {

ModelShiftSet::ModelShiftSet(double delta) : delta_(delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw Error(ErrorCode::kInvalidShift, "shift radius delta must be finite and > 0");
  }
}

IntervalNetwork::IntervalNetwork(const Network& base, double radius) : base_(base), radius_(radius) {
  for (int i = 0; i < base.num_layers(); ++i) {
    w_lower_.push_back(base.weight(i).array() - radius);
    w_upper_.push_back(base.weight(i).array() + radius);
    b_lower_.push_back(base.bias(i).array() - radius);
    b_upper_.push_back(base.bias(i).array() + radius);
  }
}

IntervalNetwork abstract(const Network& net, const ModelShiftSet& shifts) { return IntervalNetwork(net, shifts.delta()); }

IntervalNetwork exact_intervals(const Network& net) { return IntervalNetwork(net, 0.0); }

LayerBounds propagate_layer_bounds(const IntervalNetwork& inet, const Vec& x_lower, const Vec& x_upper) {
  if (x_lower.size() != inet.input_dim() || x_upper.size() != inet.input_dim()) {
    throw Error(ErrorCode::kInputShape, "input box dimension does not match the network");
  }
  LayerBounds bounds;
  Vec vl = x_lower, vu = x_upper;
  for (int layer = 0; layer < inet.num_layers(); ++layer) {
    const Mat& wl = inet.weight_lower(layer);
    const Mat& wu = inet.weight_upper(layer);
    Vec zl = inet.bias_lower(layer), zu = inet.bias_upper(layer);
    for (Eigen::Index r = 0; r < wl.rows(); ++r) {
      for (Eigen::Index c = 0; c < wl.cols(); ++c) {
        const double p1 = wl(r, c) * vl(c), p2 = wl(r, c) * vu(c);
        const double p3 = wu(r, c) * vl(c), p4 = wu(r, c) * vu(c);
        zl(r) += std::min({p1, p2, p3, p4});
        zu(r) += std::max({p1, p2, p3, p4});
      }
    }
    bounds.lower.push_back(zl);
    bounds.upper.push_back(zu);
    vl = zl.cwiseMax(0.0);
    vu = zu.cwiseMax(0.0);
  }
  return bounds;
}

OutputBound propagate_bounds(const IntervalNetwork& inet, const Vec& x) {
  return propagate_layer_bounds(inet, x, x).output();
}

}  // namespace proplace
