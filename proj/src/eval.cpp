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

#include "proplace/eval.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "proplace/certify.hpp"
#include "proplace/errors.hpp"

namespace proplace {

namespace {

constexpr double kDensityEpsilon = 1e-10;

std::vector<Vec> rows_of(const Mat& m) {
  std::vector<Vec> out;
  out.reserve(m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(m.row(i).transpose());
  return out;
}

std::vector<int> iota_ids(Eigen::Index n) {
  std::vector<int> ids(n);
  for (Eigen::Index i = 0; i < n; ++i) ids[i] = static_cast<int>(i);
  return ids;
}

KdTree reference_tree(const Mat& reference, int k) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "LOF needs k >= 1");
  if (reference.rows() <= k) {
    throw Error(ErrorCode::kInsufficientReference, "LOF with k=" + std::to_string(k) + " needs more than " +
                                                       std::to_string(k) + " reference points, got " +
                                                       std::to_string(reference.rows()));
  }
  return KdTree(rows_of(reference), iota_ids(reference.rows()), Metric::kL2);
}

}  // namespace

double l1_distance(const Vec& x, const Vec& x_prime) { return distance(x, x_prime, Metric::kL1); }

Lof::Lof(const Mat& reference, int k) : k_(k), tree_(reference_tree(reference, k)) {
  const int n = tree_.size();
  std::vector<std::vector<Neighbour>> neighbours(n);
  k_distance_.resize(n);
  for (int i = 0; i < n; ++i) {
    auto cursor = tree_.query(tree_.point(i));
    while (static_cast<int>(neighbours[i].size()) < k_) {
      const auto nb = cursor.next();
      if (nb->slot != i) neighbours[i].push_back(*nb);
    }
    k_distance_(i) = neighbours[i].back().distance;
  }
  lrd_.resize(n);
  for (int i = 0; i < n; ++i) {
    double reach = 0.0;
    for (const Neighbour& nb : neighbours[i]) reach += std::max(k_distance_(nb.slot), nb.distance);
    lrd_(i) = 1.0 / (reach / k_ + kDensityEpsilon);
  }
}

double Lof::score(const Vec& point) const {
  const std::vector<Neighbour> nbrs = tree_.nearest(point, k_);
  double reach = 0.0, density = 0.0;
  for (const Neighbour& nb : nbrs) {
    reach += std::max(k_distance_(nb.slot), nb.distance);
    density += lrd_(nb.slot);
  }
  const double lrd = 1.0 / (reach / k_ + kDensityEpsilon);
  return density / k_ / lrd;
}

double validity_rate(const std::vector<Vec>& ces, const std::vector<Network>& models) {
  if (ces.empty() || models.empty()) throw Error(ErrorCode::kInvalidArgument, "validity rate of an empty set");
  long valid = 0;
  for (const Vec& c : ces) {
    for (const Network& m : models) valid += m.predict(c) == 1;
  }
  return 100.0 * static_cast<double>(valid) / static_cast<double>(ces.size() * models.size());
}

double v_delta_rate(const std::vector<Vec>& ces, const Network& net, const ModelShiftSet& shifts) {
  if (ces.empty()) throw Error(ErrorCode::kInvalidArgument, "robustness rate of an empty set");
  int robust = 0;
  for (const Vec& c : ces) robust += certify_delta_robust(net, shifts, c).robust;
  return 100.0 * robust / static_cast<double>(ces.size());
}

MetricsReport evaluate(const std::vector<Vec>& inputs, const std::vector<Vec>& ces, const Network& net,
                       const ModelShiftSet& shifts, const std::vector<Network>& retrained, const Lof& lof) {
  if (inputs.size() != ces.size()) throw Error(ErrorCode::kInputShape, "inputs and CEs differ in count");
  MetricsReport report;
  if (ces.empty()) return report;
  long valid = 0, robust = 0;
  for (std::size_t i = 0; i < ces.size(); ++i) {
    InstanceMetrics m;
    m.index = static_cast<int>(i);
    m.l1 = l1_distance(inputs[i], ces[i]);
    m.lof = lof.score(ces[i]);
    for (const Network& r : retrained) m.valid_models += r.predict(ces[i]) == 1;
    m.total_models = static_cast<int>(retrained.size());
    const Certificate cert = certify_delta_robust(net, shifts, ces[i]);
    m.delta_robust = cert.robust;
    m.worst_logit = cert.worst_logit;
    report.l1_mean += m.l1;
    report.lof_mean += m.lof;
    valid += m.valid_models;
    robust += m.delta_robust;
    report.per_instance.push_back(m);
  }
  const double n = static_cast<double>(ces.size());
  report.l1_mean /= n;
  report.lof_mean /= n;
  report.vr_percent = retrained.empty() ? 0.0 : 100.0 * static_cast<double>(valid) / (n * retrained.size());
  report.v_delta_percent = 100.0 * static_cast<double>(robust) / n;
  return report;
}

std::string format_table(const std::string& label, const MetricsReport& report) {
  // Pads by code points so the Greek and script headers line up.
  auto cell = [](const std::string& text, int width, bool left = false) {
    int shown = 0;
    for (unsigned char c : text) shown += (c & 0xC0) != 0x80;
    const std::string pad(std::max(0, width - shown), ' ');
    return left ? text + pad : pad + text;
  };
  auto fixed = [](double v, int digits) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << v;
    return s.str();
  };
  std::string out = cell("method", 12, true) + cell("n", 6) + cell("vr", 9) + cell("vΔ", 9) + cell("ℓ1", 9) +
                    cell("lof", 9) + "\n";
  out += cell(label, 12, true) + cell(std::to_string(report.per_instance.size()), 6) +
         cell(fixed(report.vr_percent, 1), 9) + cell(fixed(report.v_delta_percent, 1), 9) +
         cell(fixed(report.l1_mean, 3), 9) + cell(fixed(report.lof_mean, 2), 9) + "\n";
  return out;
}

}  // namespace proplace
