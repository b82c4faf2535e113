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

#include <functional>
#include <string>

#include "proplace/interval.hpp"
#include "proplace/milp.hpp"
#include "proplace/network.hpp"

namespace proplace {

/// Receives every MILP built during a solve (for LP-file dumps).
using ModelObserver = std::function<void(const milp::Model&, const std::string& tag)>;

struct CertifyOptions {
  /// Accept without a MILP solve when interval propagation already gives l >= 0.
  bool short_circuit = false;
  milp::SolveOptions solve{std::chrono::seconds(60), 1e-9, 1e-6};
  ModelObserver observer;
};

struct Certificate {
  bool robust = false;
  /// Minimum logit over all shifted models; equals `bounds.l` when the
  /// MILP was skipped (`exact == false`).
  double worst_logit = 0.0;
  OutputBound bounds{0.0, 0.0};
  bool exact = false;
};

/// The shifted model with the lowest logit at a point.
struct WorstCase {
  Network model;
  double worst_logit = 0.0;
  OutputBound bounds{0.0, 0.0};
};

/// Solves the worst-case-model MILP exactly. Throws
/// kCertificationInconclusive on timeout, kInternalConsistency if the
/// solver reports infeasibility, and kEncoding if the recovered model does
/// not reproduce the optimum.
WorstCase find_worst_case(const Network& net, const ModelShiftSet& shifts, const Vec& x_prime,
                          const CertifyOptions& options = {});

/// Δ-robustness test: robust iff the minimum logit over all shifted models is >= 0.
Certificate certify_delta_robust(const Network& net, const ModelShiftSet& shifts, const Vec& x_prime,
                                 const CertifyOptions& options = {});

}  // namespace proplace
