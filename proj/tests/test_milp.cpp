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

#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "milp_oracles.hpp"
#include "proplace/errors.hpp"
#include "proplace/milp.hpp"

using namespace proplace::milp;
using namespace proplace::milp::oracle;

TEST_CASE("big-M style model: min v with v >= 2b, v >= 1 - b") {
  Model m;
  const VarId v = m.add_continuous("v", 0.0, 10.0);
  const VarId b = m.add_binary("b");
  m.add_constraint(LinearExpr().add(v, 1).add(b, -2), Comparator::kGreaterEqual, 0.0);
  m.add_constraint(LinearExpr().add(v, 1).add(b, 1), Comparator::kGreaterEqual, 1.0);
  m.set_objective(LinearExpr().add(v, 1), ObjectiveSense::kMinimize);
  const auto s = solve(m);
  REQUIRE(s.status == SolveStatus::kOptimal);
  CHECK(s.objective_value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(s.values[v] == doctest::Approx(1.0));
  CHECK(s.values[b] == 0.0);
}

TEST_CASE("pure LP path") {
  Model m;
  const VarId x = m.add_continuous("x", 0.0, 10.0);
  m.add_constraint(LinearExpr().add(x, 1), Comparator::kGreaterEqual, 3.0);
  m.set_objective(LinearExpr().add(x, 1), ObjectiveSense::kMinimize);
  const auto s = solve(m);
  REQUIRE(s.status == SolveStatus::kOptimal);
  CHECK(s.objective_value == doctest::Approx(3.0));
}

TEST_CASE("packing: max b1 + b2 with b1 + b2 <= 1") {
  Model m;
  const VarId b1 = m.add_binary("b1");
  const VarId b2 = m.add_binary("b2");
  m.add_constraint(LinearExpr().add(b1, 1).add(b2, 1), Comparator::kLessEqual, 1.0);
  m.set_objective(LinearExpr().add(b1, 1).add(b2, 1), ObjectiveSense::kMaximize);
  const auto s = solve(m);
  REQUIRE(s.status == SolveStatus::kOptimal);
  CHECK(s.objective_value == doctest::Approx(1.0));
}

TEST_CASE("infeasible and unbounded statuses") {
  Model inf;
  const VarId x = inf.add_continuous("x", 0.0, 1.0);
  inf.add_constraint(LinearExpr().add(x, 1), Comparator::kGreaterEqual, 2.0);
  inf.set_objective(LinearExpr().add(x, 1), ObjectiveSense::kMinimize);
  CHECK(solve(inf).status == SolveStatus::kInfeasible);

  Model unb;
  const VarId y = unb.add_continuous("y", 0.0, kInf);
  unb.add_constraint(LinearExpr().add(y, 1), Comparator::kGreaterEqual, 1.0);
  unb.set_objective(LinearExpr().add(y, 1), ObjectiveSense::kMaximize);
  CHECK(solve(unb).status == SolveStatus::kUnbounded);
}

TEST_CASE("free variables and equality rows") {
  Model m;
  const VarId x = m.add_continuous("x", -kInf, kInf);
  const VarId y = m.add_continuous("y", -kInf, kInf);
  m.add_constraint(LinearExpr().add(x, 1).add(y, 1), Comparator::kEqual, 1.0);
  m.add_constraint(LinearExpr().add(x, 1).add(y, -1), Comparator::kGreaterEqual, -3.0);
  m.add_constraint(LinearExpr().add(x, 1).add(y, -1), Comparator::kLessEqual, 5.0);
  m.set_objective(LinearExpr().add(x, 2).add(y, 1), ObjectiveSense::kMinimize);
  const auto s = solve(m);
  REQUIRE(s.status == SolveStatus::kOptimal);
  // x + y = 1, x - y >= -3 -> x >= -1; objective x + 1 minimised at x = -1.
  CHECK(s.values[x] == doctest::Approx(-1.0));
  CHECK(s.values[y] == doctest::Approx(2.0));
}

TEST_CASE("model validation rejects malformed models") {
  Model m;
  m.add_binary("b");
  m.set_bounds(0, 0.0, 2.0);
  CHECK_THROWS_AS(m.validate(), proplace::Error);

  Model n;
  n.add_continuous("x", 0, 1);
  n.add_constraint(LinearExpr().add(3, 1.0), Comparator::kLessEqual, 1.0);
  CHECK_THROWS_AS(n.validate(), proplace::Error);
}

TEST_CASE("random pure-binary MILPs match exhaustive enumeration") {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 11;
    const Model model = random_binary_model(rng, n, 1 + trial % 5);
    bool feasible;
    const double oracle = enumerate_binary_optimum(model, feasible);
    const auto s = solve(model);
    CAPTURE(trial);
    REQUIRE(feasible);
    REQUIRE(s.status == SolveStatus::kOptimal);
    CHECK(std::abs(s.objective_value - oracle) <= 1e-6);
    CHECK(model.max_violation(s.values) <= 1e-6);
  }
}

TEST_CASE("random mixed MILPs match vertex enumeration, LP relaxation bounds MILP") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const Model model = random_mixed_model(rng, 1 + trial % 8, 2 + trial % 4);
    bool feasible;
    const double oracle = enumerate_mixed_optimum(model, feasible);
    const auto s = solve(model);
    const auto relaxed = solve_lp(model);
    CAPTURE(trial);
    REQUIRE(feasible);
    REQUIRE(s.status == SolveStatus::kOptimal);
    CHECK(std::abs(s.objective_value - oracle) <= 1e-6);
    REQUIRE(relaxed.status == SolveStatus::kOptimal);
    CHECK(relaxed.objective_value <= s.objective_value + 1e-9);
  }
}

TEST_CASE("degenerate LP terminates") {
  // Klee-Minty-like degenerate vertex: many constraints through the origin.
  Model m;
  const int n = 6;
  for (int j = 0; j < n; ++j) m.add_continuous("x" + std::to_string(j), 0.0, kInf);
  for (int i = 0; i < 12; ++i) {
    LinearExpr e;
    for (int j = 0; j < n; ++j) e.add(j, ((i * 7 + j * 3) % 5) - 2.0);
    m.add_constraint(e, Comparator::kLessEqual, 0.0);
  }
  LinearExpr bound;
  for (int j = 0; j < n; ++j) bound.add(j, 1.0);
  m.add_constraint(bound, Comparator::kLessEqual, 1.0);
  LinearExpr obj;
  for (int j = 0; j < n; ++j) obj.add(j, -(j + 1.0));
  m.set_objective(obj, ObjectiveSense::kMinimize);
  const auto s = solve(m);
  REQUIRE(s.status == SolveStatus::kOptimal);
  CHECK(m.max_violation(s.values) <= 1e-7);
}

TEST_CASE("timeout reports best incumbent status") {
  std::mt19937_64 rng(5);
  const Model model = random_binary_model(rng, 12, 4);
  SolveOptions opts;
  opts.time_limit = std::chrono::duration<double>(0.0);
  CHECK(solve(model, opts).status == SolveStatus::kTimeout);
}

TEST_CASE("LP export has the standard sections and lists binaries") {
  Model m;
  const VarId x = m.add_continuous("x", 0.0, 10.0);
  const VarId b = m.add_binary("b");
  m.add_constraint(LinearExpr().add(x, 1).add(b, -2.5), Comparator::kGreaterEqual, 0.5, "link");
  m.set_objective(LinearExpr().add(x, 1), ObjectiveSense::kMinimize);
  const std::string text = export_lp(m);
  CHECK(text.find("Minimize") != std::string::npos);
  CHECK(text.find("Subject To") != std::string::npos);
  CHECK(text.find("Bounds") != std::string::npos);
  CHECK(text.find("Binaries\n b\n") != std::string::npos);
  CHECK(text.find("End") != std::string::npos);
}

TEST_CASE("LP export/parse round trip is a fixpoint and preserves optima") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    Model model = random_mixed_model(rng, 3, 3);
    model.add_continuous("free_var", -kInf, kInf);
    model.add_constraint(LinearExpr().add(model.num_variables() - 1, 1.0).add(0, -1.0), Comparator::kEqual, 0.0);
    LinearExpr obj = model.objective();
    obj.constant = 1.25;
    model.set_objective(obj, ObjectiveSense::kMinimize);
    const std::string first = export_lp(model);
    const Model reparsed = parse_lp(first);
    const std::string second = export_lp(reparsed);
    CHECK(first == second);
    CHECK(reparsed.num_variables() == model.num_variables());
    CHECK(reparsed.num_binaries() == model.num_binaries());
    const auto a = solve(model), b = solve(reparsed);
    REQUIRE(a.status == b.status);
    if (a.status == SolveStatus::kOptimal) CHECK(a.objective_value == doctest::Approx(b.objective_value));
  }
}

TEST_CASE("LP parser accepts hand-written files") {
  const Model m = parse_lp(R"(\ comment
Maximize
 obj: 3 x + 2y - 1
Subject To
 c1: x + y <= 4
 c2: x + 3 y <= 6
Bounds
 x <= 3
 y >= 0
End
)");
  const auto s = solve(m);
  REQUIRE(s.status == SolveStatus::kOptimal);
  CHECK(s.objective_value == doctest::Approx(3 * 3 + 2 * 1 - 1));
  CHECK_THROWS_AS(parse_lp("Minimize\n obj: x\nSubject To\n c: x >=\nEnd\n"), proplace::Error);
}
