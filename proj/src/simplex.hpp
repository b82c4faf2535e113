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
#include <Eigen/Sparse>

#include <memory>
#include <vector>

#include "proplace/milp.hpp"

namespace proplace::milp::detail {

/// Minimisation LP: min c'x  s.t.  a.row(i) x (cmp_i) b_i,  lower <= x <= upper.
struct LpProblem {
  Eigen::SparseMatrix<double> a;
  Eigen::VectorXd b;
  std::vector<Comparator> cmp;
  Eigen::VectorXd c;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  double objective_constant = 0.0;
  /// +1 for minimisation, -1 when the source model maximises.
  double sense_sign = 1.0;
};

LpProblem make_lp(const Model& model);

enum class VarState { kBasic, kAtLower, kAtUpper, kFree, kFixed };

/// An optimal basis over structural and slack columns, reusable as a
/// starting point after bounds are tightened.
struct Basis {
  std::vector<int> basic;      // column per row
  std::vector<VarState> state;  // per structural and slack column
  Eigen::MatrixXd inverse;      // B^-1 for `basic`; may be empty
  int updates = 0;              // rank-one updates applied since the last refactor
};

struct LpOutcome {
  SolveStatus status = SolveStatus::kInfeasible;
  Eigen::VectorXd x;
  /// Objective of the minimisation form (sense-adjusted, without constant).
  double objective = 0.0;
  int iterations = 0;
  /// Final basis when optimal and free of artificial columns.
  std::shared_ptr<const Basis> basis;
};

/// Bounded-variable two-phase revised primal simplex with an explicit dense
/// basis inverse and sparse constraint columns. Dantzig pricing with a
/// Harris ratio test; falls back to Bland's rule after a run of degenerate
/// pivots. Throws kNumeric on a singular basis.
///
/// With `warm`, starts from that basis and restores primal feasibility with
/// a bounded dual simplex; falls back to a cold start if the warm path fails.
LpOutcome solve_bounded_lp(const LpProblem& lp, const Eigen::VectorXd& lower, const Eigen::VectorXd& upper,
                           const Basis* warm = nullptr);

}  // namespace proplace::milp::detail
