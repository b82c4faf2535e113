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

#include <algorithm>
#include <cmath>
#include <memory>
#include <queue>

#include "proplace/errors.hpp"
#include "proplace/milp.hpp"
#include "simplex.hpp"

namespace proplace::milp {

namespace {

using Clock = std::chrono::steady_clock;

// Doubles of stored basis inverses allowed across the open list.
constexpr double kWarmInverseBudget = 3.2e7;

struct Node {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  double bound;
  int depth;
  long order;
  std::shared_ptr<const detail::Basis> warm;  // parent's optimal basis
};

struct NodeCompare {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.order > b.order;
  }
};

Solution to_solution(const detail::LpProblem& lp, const detail::LpOutcome& out) {
  Solution s;
  s.status = out.status;
  if (out.status == SolveStatus::kOptimal) {
    s.values.assign(out.x.data(), out.x.data() + out.x.size());
    s.objective_value = lp.sense_sign * out.objective + lp.objective_constant;
    s.has_incumbent = true;
  }
  return s;
}

}  // namespace

Solution solve_lp(const Model& model, std::span<const double> lower, std::span<const double> upper) {
  model.validate();
  const auto lp = detail::make_lp(model);
  Eigen::VectorXd lo = lp.lower, up = lp.upper;
  if (!lower.empty()) lo = Eigen::Map<const Eigen::VectorXd>(lower.data(), static_cast<Eigen::Index>(lower.size()));
  if (!upper.empty()) up = Eigen::Map<const Eigen::VectorXd>(upper.data(), static_cast<Eigen::Index>(upper.size()));
  return to_solution(lp, detail::solve_bounded_lp(lp, lo, up));
}

Solution solve(const Model& model, const SolveOptions& options) {
  model.validate();
  const auto start = Clock::now();
  const auto lp = detail::make_lp(model);
  std::vector<int> binaries;
  for (int j = 0; j < model.num_variables(); ++j) {
    if (model.variable(j).binary) binaries.push_back(j);
  }

  Solution result;
  double incumbent = kInf;  // minimisation form
  Eigen::VectorXd incumbent_x;
  long order = 0;
  long nodes = 0;

  // Fixes every binary to its rounded value and re-optimises the continuous part.
  auto try_rounding = [&](const Node& node, const Eigen::VectorXd& x, const detail::Basis* warm) {
    Eigen::VectorXd lo = node.lower, up = node.upper;
    for (int j : binaries) {
      const double r = std::clamp(std::round(x(j)), lo(j), up(j));
      lo(j) = up(j) = r;
    }
    const auto out = detail::solve_bounded_lp(lp, lo, up, warm);
    if (out.status == SolveStatus::kOptimal && out.objective < incumbent) {
      incumbent = out.objective;
      incumbent_x = out.x;
    }
  };

  std::priority_queue<Node, std::vector<Node>, NodeCompare> open;
  open.push(Node{lp.lower, lp.upper, -kInf, 0, order++, nullptr});
  bool timed_out = false;
  bool unbounded = false;

  while (!open.empty()) {
    if (Clock::now() - start > options.time_limit) {
      timed_out = true;
      break;
    }
    Node node = open.top();
    open.pop();
    if (node.bound >= incumbent - options.absolute_gap) continue;
    ++nodes;

    const auto out = detail::solve_bounded_lp(lp, node.lower, node.upper, node.warm.get());
    if (out.status == SolveStatus::kInfeasible) continue;
    if (out.status == SolveStatus::kUnbounded) {
      unbounded = true;
      break;
    }
    if (out.objective >= incumbent - options.absolute_gap) continue;

    int branch_var = -1;
    double best_frac = options.integrality_tolerance;
    for (int j : binaries) {
      const double frac = std::abs(out.x(j) - std::round(out.x(j)));
      if (frac > best_frac + 1e-12) {
        best_frac = frac;
        branch_var = j;
      }
    }
    if (branch_var < 0) {
      if (binaries.empty()) {
        incumbent = out.objective;
        incumbent_x = out.x;
      } else {
        try_rounding(node, out.x, out.basis.get());
      }
      continue;
    }
    if (nodes == 1 || node.depth % 4 == 0) try_rounding(node, out.x, out.basis.get());

    // Children share the parent's basis. Its inverse is kept only while the
    // open list is small enough for the copies to stay cheap.
    std::shared_ptr<const detail::Basis> warm = out.basis;
    if (warm && static_cast<double>(open.size() + 2) * warm->inverse.size() > kWarmInverseBudget) {
      auto slim = std::make_shared<detail::Basis>(*warm);
      slim->inverse.resize(0, 0);
      slim->updates = 0;
      warm = std::move(slim);
    }
    Node down{node.lower, node.upper, out.objective, node.depth + 1, order++, warm};
    down.upper(branch_var) = 0.0;
    Node up{node.lower, node.upper, out.objective, node.depth + 1, order++, warm};
    up.lower(branch_var) = 1.0;
    // The child on the side the relaxation leans towards is explored first on ties.
    if (out.x(branch_var) >= 0.5) std::swap(down.order, up.order);
    open.push(std::move(down));
    open.push(std::move(up));
  }

  result.nodes = nodes;
  if (unbounded) {
    result.status = SolveStatus::kUnbounded;
    return result;
  }
  if (incumbent_x.size() > 0) {
    result.values.assign(incumbent_x.data(), incumbent_x.data() + incumbent_x.size());
    for (int j : binaries) result.values[j] = std::round(result.values[j]);
    result.objective_value = lp.sense_sign * incumbent + lp.objective_constant;
    result.has_incumbent = true;
  }
  if (timed_out) {
    result.status = SolveStatus::kTimeout;
  } else {
    result.status = result.has_incumbent ? SolveStatus::kOptimal : SolveStatus::kInfeasible;
  }
  return result;
}

}  // namespace proplace::milp
