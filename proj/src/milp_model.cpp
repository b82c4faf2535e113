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

#include "proplace/errors.hpp"
#include "proplace/milp.hpp"

namespace proplace::milp {

LinearExpr& LinearExpr::operator+=(const LinearExpr& other) {
  terms.insert(terms.end(), other.terms.begin(), other.terms.end());
  constant += other.constant;
  return *this;
}

LinearExpr& LinearExpr::operator*=(double s) {
  for (auto& t : terms) t.coef *= s;
  constant *= s;
  return *this;
}

LinearExpr LinearExpr::canonical() const {
  LinearExpr out;
  out.constant = constant;
  auto sorted = terms;
  std::stable_sort(sorted.begin(), sorted.end(), [](const Term& a, const Term& b) { return a.var < b.var; });
  for (const auto& t : sorted) {
    if (!out.terms.empty() && out.terms.back().var == t.var) {
      out.terms.back().coef += t.coef;
    } else {
      out.terms.push_back(t);
    }
  }
  std::erase_if(out.terms, [](const Term& t) { return t.coef == 0.0; });
  return out;
}

double LinearExpr::evaluate(std::span<const double> values) const {
  double s = constant;
  for (const auto& t : terms) s += t.coef * values[t.var];
  return s;
}

LinearExpr operator+(LinearExpr a, const LinearExpr& b) { return a += b; }
LinearExpr operator-(LinearExpr a, const LinearExpr& b) {
  LinearExpr nb = b;
  nb *= -1.0;
  return a += nb;
}
LinearExpr operator*(double s, LinearExpr a) { return a *= s; }

std::string_view status_name(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kUnbounded: return "unbounded";
    case SolveStatus::kTimeout: return "timeout";
  }
  return "unknown";
}

VarId Model::add_continuous(std::string name, double lower, double upper) {
  if (name.empty()) name = "x" + std::to_string(variables_.size());
  variables_.push_back({std::move(name), lower, upper, false});
  return static_cast<VarId>(variables_.size() - 1);
}

VarId Model::add_binary(std::string name) {
  if (name.empty()) name = "b" + std::to_string(variables_.size());
  variables_.push_back({std::move(name), 0.0, 1.0, true});
  return static_cast<VarId>(variables_.size() - 1);
}

void Model::set_bounds(VarId var, double lower, double upper) {
  auto& v = variables_.at(var);
  v.lower = lower;
  v.upper = upper;
}

void Model::add_constraint(const LinearExpr& expr, Comparator cmp, double rhs, std::string name) {
  const LinearExpr c = expr.canonical();
  if (name.empty()) name = "c" + std::to_string(constraints_.size());
  constraints_.push_back({std::move(name), c.terms, cmp, rhs - c.constant});
}

void Model::set_objective(const LinearExpr& expr, ObjectiveSense sense) {
  objective_ = expr.canonical();
  sense_ = sense;
}

int Model::num_binaries() const {
  return static_cast<int>(std::count_if(variables_.begin(), variables_.end(), [](const Variable& v) { return v.binary; }));
}

void Model::validate() const {
  const int n = num_variables();
  for (const auto& v : variables_) {
    if (std::isnan(v.lower) || std::isnan(v.upper) || v.lower > v.upper) {
      throw Error(ErrorCode::kEncoding, "variable " + v.name + " has invalid bounds");
    }
    if (v.binary && (v.lower < 0.0 || v.upper > 1.0)) {
      throw Error(ErrorCode::kEncoding, "binary variable " + v.name + " has bounds outside [0,1]");
    }
  }
  auto check_terms = [n](const std::vector<Term>& terms, const std::string& where) {
    for (const auto& t : terms) {
      if (t.var < 0 || t.var >= n) throw Error(ErrorCode::kEncoding, where + " references an undeclared variable");
      if (!std::isfinite(t.coef)) throw Error(ErrorCode::kEncoding, where + " has a non-finite coefficient");
    }
  };
  for (const auto& c : constraints_) {
    check_terms(c.terms, "constraint " + c.name);
    if (!std::isfinite(c.rhs)) throw Error(ErrorCode::kEncoding, "constraint " + c.name + " has a non-finite rhs");
  }
  check_terms(objective_.terms, "objective");
  if (!std::isfinite(objective_.constant)) throw Error(ErrorCode::kEncoding, "objective constant is not finite");
}

double Model::max_violation(std::span<const double> values) const {
  double worst = 0.0;
  for (std::size_t j = 0; j < variables_.size(); ++j) {
    const auto& v = variables_[j];
    worst = std::max({worst, v.lower - values[j], values[j] - v.upper});
    if (v.binary) worst = std::max(worst, std::abs(values[j] - std::round(values[j])));
  }
  for (const auto& c : constraints_) {
    double lhs = 0.0;
    for (const auto& t : c.terms) lhs += t.coef * values[t.var];
    switch (c.cmp) {
      case Comparator::kLessEqual: worst = std::max(worst, lhs - c.rhs); break;
      case Comparator::kGreaterEqual: worst = std::max(worst, c.rhs - lhs); break;
      case Comparator::kEqual: worst = std::max(worst, std::abs(lhs - c.rhs)); break;
    }
  }
  return worst;
}

}  // namespace proplace::milp
