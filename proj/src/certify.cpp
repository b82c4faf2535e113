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

#include "proplace/certify.hpp"

#include <cmath>

#include "proplace/encoding.hpp"

namespace proplace {

namespace {

constexpr double kReplayTolerance = 1e-5;

}  // namespace

WorstCase find_worst_case(const Network& net, const ModelShiftSet& shifts, const Vec& x_prime,
                          const CertifyOptions& options) {
  if (x_prime.size() != net.input_dim()) {
    throw Error(ErrorCode::kInputShape, "point dimension does not match the network");
  }
  milp::Model model;
  const NetworkEncoding enc = encode_shifted_network(model, net, shifts, x_prime, "");
  model.set_objective(milp::LinearExpr().add(enc.output, -1.0), milp::ObjectiveSense::kMaximize);
  if (options.observer) options.observer(model, "inner");

  const milp::Solution sol = milp::solve(model, options.solve);
  if (sol.status == milp::SolveStatus::kTimeout) {
    throw Error(ErrorCode::kCertificationInconclusive, "worst-case MILP timed out");
  }
  if (sol.status != milp::SolveStatus::kOptimal) {
    throw Error(ErrorCode::kInternalConsistency,
                std::string("worst-case MILP returned ") + std::string(milp::status_name(sol.status)));
  }
  WorstCase result;
  result.worst_logit = -sol.objective_value;
  result.bounds = enc.bounds.output();
  result.model = recover_shifted_network(net, shifts, x_prime, enc, sol.values);
  const double replay = result.model.forward_logit(x_prime);
  if (std::abs(replay - result.worst_logit) > kReplayTolerance * (1.0 + std::abs(replay))) {
    throw Error(ErrorCode::kEncoding, "worst-case model replays to " + std::to_string(replay) + " but the MILP reported " +
                                          std::to_string(result.worst_logit));
  }
  return result;
}

Certificate certify_delta_robust(const Network& net, const ModelShiftSet& shifts, const Vec& x_prime,
                                 const CertifyOptions& options) {
  Certificate cert;
  cert.bounds = propagate_bounds(abstract(net, shifts), x_prime);
  if (options.short_circuit && cert.bounds.l >= 0.0) {
    cert.robust = true;
    cert.worst_logit = cert.bounds.l;
    cert.exact = false;
    return cert;
  }
  const WorstCase worst = find_worst_case(net, shifts, x_prime, options);
  cert.worst_logit = worst.worst_logit;
  cert.robust = worst.worst_logit >= 0.0;
  cert.exact = true;
  return cert;
}

}  // namespace proplace
