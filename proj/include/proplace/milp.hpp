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

#include <chrono>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace proplace::milp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

using VarId = int;

enum class Comparator { kLessEqual, kGreaterEqual, kEqual };
enum class ObjectiveSense { kMinimize, kMaximize };

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = kInf;
  bool binary = false;
};

struct Term {
  VarId var;
  double coef;
};

/// Sparse affine expression `sum coef * var + constant`.
struct LinearExpr {
  std::vector<Term> terms;
  double constant = 0.0;

  LinearExpr() = default;
  LinearExpr(double c) : constant(c) {}  // NOLINT(google-explicit-constructor)

  LinearExpr& add(VarId var, double coef) {
    if (coef != 0.0) terms.push_back({var, coef});
    return *this;
  }
  LinearExpr& operator+=(const LinearExpr& other);
  LinearExpr& operator*=(double s);
  /// Sorted by variable with duplicates merged and zero coefficients dropped.
  LinearExpr canonical() const;
  double evaluate(std::span<const double> values) const;
};

LinearExpr operator+(LinearExpr a, const LinearExpr& b);
LinearExpr operator-(LinearExpr a, const LinearExpr& b);
LinearExpr operator*(double s, LinearExpr a);

struct Constraint {
  std::string name;
  std::vector<Term> terms;  // canonical
  Comparator cmp;
  double rhs;
};

/// Solver-agnostic mixed-binary linear program.
class Model {
 public:
  VarId add_continuous(std::string name, double lower, double upper);
  VarId add_binary(std::string name);

  /// Adds `expr cmp rhs`; the constant of `expr` is moved to the right-hand side.
  void add_constraint(const LinearExpr& expr, Comparator cmp, double rhs, std::string name = {});
  void set_objective(const LinearExpr& expr, ObjectiveSense sense);

  void set_bounds(VarId var, double lower, double upper);

  int num_variables() const { return static_cast<int>(variables_.size()); }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }
  int num_binaries() const;
  const std::vector<Variable>& variables() const { return variables_; }
  const Variable& variable(VarId v) const { return variables_.at(v); }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const LinearExpr& objective() const { return objective_; }
  ObjectiveSense sense() const { return sense_; }

  /// Throws kEncoding when the model violates its structural invariants.
  void validate() const;

  /// Largest violation of any bound, constraint or binary integrality.
  double max_violation(std::span<const double> values) const;
  double objective_value(std::span<const double> values) const { return objective_.evaluate(values); }

 private:
  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
  LinearExpr objective_;
  ObjectiveSense sense_ = ObjectiveSense::kMinimize;
};

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded, kTimeout };

std::string_view status_name(SolveStatus status);

struct Solution {
  SolveStatus status = SolveStatus::kInfeasible;
  std::vector<double> values;
  double objective_value = 0.0;
  bool has_incumbent = false;
  long nodes = 0;
};

struct SolveOptions {
  std::chrono::duration<double> time_limit = std::chrono::seconds(60);
  double absolute_gap = 1e-6;
  double integrality_tolerance = 1e-6;
};

/// Optimises the continuous relaxation with binaries boxed by the given
/// bounds (defaults to the model's own bounds when spans are empty).
Solution solve_lp(const Model& model, std::span<const double> lower = {}, std::span<const double> upper = {});

/// Branch-and-bound over LP relaxations, branching on the most fractional
/// binary (lowest id on ties).
Solution solve(const Model& model, const SolveOptions& options = {});

/// CPLEX-LP text (Minimize/Maximize, Subject To, Bounds, Binaries, End).
std::string export_lp(const Model& model);
Model parse_lp(std::string_view text);

}  // namespace proplace::milp
