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

#include "proplace/encoding.hpp"

#include <algorithm>
#include <cmath>

namespace proplace {

using milp::Comparator;
using milp::LinearExpr;

int NetworkEncoding::num_gates() const {
  int n = 0;
  for (const auto& layer : gates)
    for (auto g : layer) n += g >= 0;
  return n;
}

namespace {

std::string node_name(const std::string& prefix, const char* kind, int layer, int node) {
  return prefix + kind + std::to_string(layer + 1) + "_" + std::to_string(node);
}

LinearExpr affine(const Mat& w, const Vec& b, int row, const std::vector<LinearExpr>& prev) {
  LinearExpr z(b(row));
  for (Eigen::Index c = 0; c < w.cols(); ++c) {
    if (w(row, c) == 0.0) continue;
    LinearExpr term = prev[c];
    term *= w(row, c);
    z += term;
  }
  return z;
}

LinearExpr sum_plus_one(const std::vector<LinearExpr>& prev) {
  LinearExpr s(1.0);
  for (const auto& e : prev) s += e;
  return s;
}

}  // namespace

NetworkEncoding encode_network_forward(milp::Model& model, const Network& net,
                                       std::span<const milp::LinearExpr> input, const Vec& input_lower,
                                       const Vec& input_upper, const std::string& prefix, double big_m_safety) {
  if (static_cast<int>(input.size()) != net.input_dim()) {
    throw Error(ErrorCode::kInputShape, "input expression count does not match the network");
  }
  NetworkEncoding enc;
  enc.bounds = propagate_layer_bounds(exact_intervals(net), input_lower, input_upper);
  std::vector<LinearExpr> prev(input.begin(), input.end());

  for (int layer = 0; layer < net.num_layers(); ++layer) {
    const Mat& w = net.weight(layer);
    const Vec& b = net.bias(layer);
    if (layer + 1 == net.num_layers()) {
      enc.output = model.add_continuous(prefix + "out", -milp::kInf, milp::kInf);
      LinearExpr z = affine(w, b, 0, prev);
      z.add(enc.output, -1.0);
      model.add_constraint(z, Comparator::kEqual, 0.0, prefix + "out_def");
      break;
    }
    std::vector<LinearExpr> values;
    std::vector<NodeStatus> status;
    std::vector<milp::VarId> gates;
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      const int node = static_cast<int>(r);
      const double l = enc.bounds.lower[layer](r);
      const double u = enc.bounds.upper[layer](r);
      const LinearExpr z = affine(w, b, node, prev);
      if (u <= 0.0) {
        values.emplace_back(0.0);
        status.push_back(NodeStatus::kInactive);
        gates.push_back(-1);
        continue;
      }
      const milp::VarId v = model.add_continuous(node_name(prefix, "v", layer, node), 0.0, big_m_safety * u);
      LinearExpr vz = LinearExpr().add(v, 1.0) - z;
      if (l >= 0.0) {
        model.add_constraint(vz, Comparator::kEqual, 0.0, node_name(prefix, "relu_eq", layer, node));
        status.push_back(NodeStatus::kActive);
        gates.push_back(-1);
      } else {
        const milp::VarId g = model.add_binary(node_name(prefix, "g", layer, node));
        const double m_upper = big_m_safety * u;
        const double m_lower = big_m_safety * -l;
        model.add_constraint(vz, Comparator::kGreaterEqual, 0.0, node_name(prefix, "relu_lo", layer, node));
        model.add_constraint(LinearExpr().add(v, 1.0).add(g, -m_upper), Comparator::kLessEqual, 0.0,
                             node_name(prefix, "relu_on", layer, node));
        // V <= z + M_l (1 - g)
        model.add_constraint(LinearExpr(vz).add(g, m_lower), Comparator::kLessEqual, m_lower,
                             node_name(prefix, "relu_off", layer, node));
        status.push_back(NodeStatus::kUnstable);
        gates.push_back(g);
      }
      values.push_back(LinearExpr().add(v, 1.0));
    }
    enc.values.push_back(values);
    enc.status.push_back(status);
    enc.gates.push_back(gates);
    prev = std::move(values);
  }
  return enc;
}

NetworkEncoding encode_shifted_network(milp::Model& model, const Network& net, const ModelShiftSet& shifts,
                                       const Vec& x, const std::string& prefix, double big_m_safety) {
  if (x.size() != net.input_dim()) throw Error(ErrorCode::kInputShape, "point dimension does not match the network");
  const double delta = shifts.delta();
  NetworkEncoding enc;
  enc.bounds = propagate_layer_bounds(abstract(net, shifts), x, x);
  const int last = net.num_layers() - 1;

  if (last == 0) {
    const auto out = enc.bounds.output();
    enc.output = model.add_continuous(prefix + "out", out.l, out.u);
    return enc;
  }

  // First hidden layer: the input is fixed, so each node ranges over its interval.
  std::vector<LinearExpr> prev;
  {
    std::vector<NodeStatus> status;
    for (Eigen::Index r = 0; r < net.weight(0).rows(); ++r) {
      const double l = enc.bounds.lower[0](r), u = enc.bounds.upper[0](r);
      if (u <= 0.0) {
        prev.emplace_back(0.0);
        status.push_back(NodeStatus::kInactive);
        continue;
      }
      const milp::VarId v = model.add_continuous(node_name(prefix, "v", 0, static_cast<int>(r)), std::max(l, 0.0), u);
      prev.push_back(LinearExpr().add(v, 1.0));
      status.push_back(l >= 0.0 ? NodeStatus::kActive : NodeStatus::kUnstable);
    }
    enc.values.push_back(prev);
    enc.status.push_back(status);
    enc.gates.emplace_back(prev.size(), -1);
  }

  for (int layer = 1; layer <= last; ++layer) {
    const Mat& w = net.weight(layer);
    const Vec& b = net.bias(layer);
    LinearExpr spread = sum_plus_one(prev);
    spread *= delta;
    // Range of each previous node's value, for the lower bound of the upper band.
    const Vec& pl = enc.bounds.lower[layer - 1];
    const Vec& pu = enc.bounds.upper[layer - 1];

    if (layer == last) {
      const LinearExpr nominal = affine(w, b, 0, prev);
      enc.output = model.add_continuous(prefix + "out", -milp::kInf, milp::kInf);
      model.add_constraint(LinearExpr().add(enc.output, 1.0) - (nominal - spread), Comparator::kGreaterEqual, 0.0,
                           prefix + "out_lo");
      model.add_constraint(LinearExpr().add(enc.output, 1.0) - (nominal + spread), Comparator::kLessEqual, 0.0,
                           prefix + "out_hi");
      break;
    }

    std::vector<LinearExpr> values;
    std::vector<NodeStatus> status;
    std::vector<milp::VarId> gates;
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      const int node = static_cast<int>(r);
      const double l = enc.bounds.lower[layer](r), u = enc.bounds.upper[layer](r);
      if (u <= 0.0) {
        values.emplace_back(0.0);
        status.push_back(NodeStatus::kInactive);
        gates.push_back(-1);
        continue;
      }
      double hi_min = b(r) + delta;
      for (Eigen::Index c = 0; c < w.cols(); ++c) {
        const double coef = w(r, c) + delta;
        hi_min += std::min(coef * std::max(pl(c), 0.0), coef * std::max(pu(c), 0.0));
      }
      const LinearExpr nominal = affine(w, b, node, prev);
      const milp::VarId v = model.add_continuous(node_name(prefix, "v", layer, node), std::max(l, 0.0), u);
      const LinearExpr vv = LinearExpr().add(v, 1.0);
      model.add_constraint(vv - (nominal - spread), Comparator::kGreaterEqual, 0.0,
                           node_name(prefix, "band_lo", layer, node));
      if (hi_min >= 0.0) {
        model.add_constraint(vv - (nominal + spread), Comparator::kLessEqual, 0.0,
                             node_name(prefix, "band_hi", layer, node));
        status.push_back(l >= 0.0 ? NodeStatus::kActive : NodeStatus::kUnstable);
        gates.push_back(-1);
      } else {
        const milp::VarId g = model.add_binary(node_name(prefix, "g", layer, node));
        const double m_upper = big_m_safety * u;
        const double m_lower = big_m_safety * -hi_min;
        model.add_constraint(LinearExpr(vv).add(g, -m_upper), Comparator::kLessEqual, 0.0,
                             node_name(prefix, "relu_on", layer, node));
        model.add_constraint((vv - (nominal + spread)).add(g, m_lower), Comparator::kLessEqual, m_lower,
                             node_name(prefix, "relu_off", layer, node));
        status.push_back(NodeStatus::kUnstable);
        gates.push_back(g);
      }
      values.push_back(vv);
    }
    enc.values.push_back(values);
    enc.status.push_back(status);
    enc.gates.push_back(gates);
    prev = std::move(values);
  }
  return enc;
}

Network recover_shifted_network(const Network& net, const ModelShiftSet& shifts, const Vec& x,
                                const NetworkEncoding& encoding, std::span<const double> values) {
  const double delta = shifts.delta();
  std::vector<Mat> weights;
  std::vector<Vec> biases;
  Vec prev = x;
  for (int layer = 0; layer < net.num_layers(); ++layer) {
    const bool is_output = layer + 1 == net.num_layers();
    Mat w = net.weight(layer);
    Vec b = net.bias(layer);
    // Every coefficient moves by alpha * delta in the direction that raises the
    // pre-activation, so the pre-activation moves by alpha * delta * spread.
    const Vec direction = layer == 0 ? Vec(prev.unaryExpr([](double v) { return double((v > 0) - (v < 0)); }))
                                     : Vec::Ones(prev.size());
    const double spread = (layer == 0 ? prev.cwiseAbs().sum() : prev.sum()) + 1.0;
    Vec next(w.rows());
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      const double nominal = w.row(r).dot(prev) + b(r);
      const double lo = nominal - delta * spread, hi = nominal + delta * spread;
      double target;
      if (is_output) {
        target = values[encoding.output];
      } else {
        const auto& value = encoding.values[layer][r];
        const double v = value.evaluate(values);
        target = v > 1e-12 ? v : std::min(hi, 0.0);
      }
      target = std::clamp(target, lo, hi);
      const double alpha = std::clamp((target - nominal) / (delta * spread), -1.0, 1.0);
      w.row(r) += alpha * delta * direction.transpose();
      b(r) += alpha * delta;
      const double z = w.row(r).dot(prev) + b(r);
      next(r) = is_output ? z : std::max(z, 0.0);
    }
    weights.push_back(std::move(w));
    biases.push_back(std::move(b));
    prev = std::move(next);
  }
  return Network(std::move(weights), std::move(biases));
}

}  // namespace proplace
