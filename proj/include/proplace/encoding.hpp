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

#include <span>
#include <string>
#include <vector>

#include "proplace/interval.hpp"
#include "proplace/milp.hpp"
#include "proplace/network.hpp"

namespace proplace {

enum class NodeStatus { kActive, kInactive, kUnstable };

/// Handles to the variables a network encoding adds to a model.
struct NetworkEncoding {
  /// Post-ReLU value of every hidden node, per hidden layer.
  std::vector<std::vector<milp::LinearExpr>> values;
  std::vector<std::vector<NodeStatus>> status;
  /// Activation indicator per hidden node; -1 for stable nodes.
  std::vector<std::vector<milp::VarId>> gates;
  /// Continuous variable holding the logit.
  milp::VarId output = -1;
  /// Pre-activation bounds used for the big-M constants.
  LayerBounds bounds;

  int num_gates() const;
};

/// Big-M encoding of a fixed-parameter network applied to `input`
/// (one affine expression per feature) ranging over the box
/// [input_lower, input_upper]. Each unstable hidden node gets a binary
/// gate and the constraints V >= 0, V >= Wv+B, V <= M_u g,
/// V <= Wv+B - M_l (1-g), with M_u, M_l the node's interval bounds scaled by
/// `big_m_safety`. Stable nodes are encoded without a gate.
NetworkEncoding encode_network_forward(milp::Model& model, const Network& net,
                                       std::span<const milp::LinearExpr> input, const Vec& input_lower,
                                       const Vec& input_upper, const std::string& prefix,
                                       double big_m_safety = 1.1);

/// Encoding of every network in the δ-box around `net`, evaluated at the
/// fixed point `x`. Because hidden values are non-negative and each node's
/// incoming parameters are independent, the weights can be projected out:
/// node values satisfy ReLU(lo(v)) <= V <= ReLU(hi(v)) where lo/hi are the
/// nominal affine map of the previous layer shifted by ∓δ(1 + Σv). The
/// output variable ranges over the same band. The encoding is exact.
NetworkEncoding encode_shifted_network(milp::Model& model, const Network& net, const ModelShiftSet& shifts,
                                       const Vec& x, const std::string& prefix, double big_m_safety = 1.1);

/// Parameters inside the δ-box that reproduce the node values of a solved
/// shifted encoding; the output takes the value of the encoding's output
/// variable.
Network recover_shifted_network(const Network& net, const ModelShiftSet& shifts, const Vec& x,
                                const NetworkEncoding& encoding, std::span<const double> values);

}  // namespace proplace
