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

#include "simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <optional>

#include "proplace/errors.hpp"

namespace proplace::milp::detail {

namespace {

constexpr double kFeasTol = 1e-9;
constexpr double kOptTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr int kRefactorEvery = 100;
constexpr int kDegenerateBeforeBland = 30;

class RevisedSimplex {
 public:
  RevisedSimplex(const LpProblem& lp, const Eigen::VectorXd& lower, const Eigen::VectorXd& upper)
      : m_(static_cast<int>(lp.a.rows())), n_(static_cast<int>(lp.a.cols())), b_(lp.b) {
    // Columns: structural | slack | artificial.
    Eigen::VectorXd start(n_);
    for (int j = 0; j < n_; ++j) {
      if (std::isfinite(lower(j))) start(j) = lower(j);
      else if (std::isfinite(upper(j))) start(j) = upper(j);
      else start(j) = 0.0;
    }
    const Eigen::VectorXd residual = b_ - lp.a * start;
    std::vector<int> art_rows;
    std::vector<double> art_sign;
    std::vector<double> slack_value(m_);
    std::vector<bool> slack_basic(m_);
    std::vector<double> slack_lo(m_), slack_up(m_);
    for (int i = 0; i < m_; ++i) {
      const double r = residual(i);
      double lo = 0.0, up = kInf;
      if (lp.cmp[i] == Comparator::kGreaterEqual) { lo = -kInf; up = 0.0; }
      if (lp.cmp[i] == Comparator::kEqual) { lo = 0.0; up = 0.0; }
      slack_lo[i] = lo;
      slack_up[i] = up;
      if (r >= lo - kFeasTol && r <= up + kFeasTol) {
        slack_value[i] = std::clamp(r, lo, up);
        slack_basic[i] = true;
      } else {
        slack_value[i] = r < lo ? lo : up;
        slack_basic[i] = false;
        art_rows.push_back(i);
        art_sign.push_back(r - slack_value[i] > 0 ? 1.0 : -1.0);
      }
    }
    const int n_art = static_cast<int>(art_rows.size());
    total_ = n_ + m_ + n_art;
    art_begin_ = n_ + m_;

    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(lp.a.nonZeros() + m_ + n_art);
    for (int j = 0; j < n_; ++j) {
      for (Eigen::SparseMatrix<double>::InnerIterator it(lp.a, j); it; ++it) entries.emplace_back(it.row(), j, it.value());
    }
    for (int i = 0; i < m_; ++i) entries.emplace_back(i, n_ + i, 1.0);
    for (int k = 0; k < n_art; ++k) entries.emplace_back(art_rows[k], art_begin_ + k, art_sign[k]);
    a_.resize(m_, total_);
    a_.setFromTriplets(entries.begin(), entries.end());
    a_.makeCompressed();

    lo_.resize(total_);
    up_.resize(total_);
    x_.resize(total_);
    lo_.head(n_) = lower;
    up_.head(n_) = upper;
    state_.assign(total_, VarState::kAtLower);
    basis_.assign(m_, -1);
    for (int j = 0; j < n_; ++j) {
      x_(j) = start(j);
      state_[j] = initial_state(j);
    }
    for (int i = 0; i < m_; ++i) {
      const int col = n_ + i;
      lo_(col) = slack_lo[i];
      up_(col) = slack_up[i];
      x_(col) = slack_value[i];
      if (slack_basic[i]) {
        basis_[i] = col;
        state_[col] = VarState::kBasic;
      } else {
        state_[col] = initial_state(col);
      }
    }
    for (int k = 0; k < n_art; ++k) {
      const int col = art_begin_ + k;
      const int row = art_rows[k];
      lo_(col) = 0.0;
      up_(col) = kInf;
      x_(col) = std::abs(residual(row) - slack_value[row]);
      basis_[row] = col;
      state_[col] = VarState::kBasic;
    }
    // The starting basis holds one slack or signed artificial per row.
    binv_ = Eigen::MatrixXd::Zero(m_, m_);
    for (int i = 0; i < m_; ++i) {
      const Column it(a_, basis_[i]);
      binv_(i, it.row()) = 1.0 / it.value();
    }
    recompute_basic();
  }

  LpOutcome run(const Eigen::VectorXd& cost) {
    LpOutcome out;
    if (total_ > art_begin_) {
      Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(total_);
      phase1.tail(total_ - art_begin_).setOnes();
      iterate(phase1);
      const double infeasibility = x_.tail(total_ - art_begin_).sum();
      const double scale = std::max(1.0, b_.size() > 0 ? b_.cwiseAbs().maxCoeff() : 0.0);
      if (infeasibility > 1e-7 * scale) {
        out.status = SolveStatus::kInfeasible;
        out.iterations = iterations_;
        return out;
      }
      for (int j = art_begin_; j < total_; ++j) {
        up_(j) = 0.0;
        if (state_[j] != VarState::kBasic) {
          x_(j) = 0.0;
          state_[j] = VarState::kFixed;
        }
      }
      drive_out_artificials();
      recompute_basic();
    }
    Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(total_);
    phase2.head(n_) = cost;
    if (!iterate(phase2)) {
      out.status = SolveStatus::kUnbounded;
      out.iterations = iterations_;
      return out;
    }
    return finish(cost);
  }

  /// Warm path: the starting basis is dual feasible for `cost`; restore
  /// primal feasibility, then polish with primal pivots. Returns nullopt
  /// when the warm start cannot be trusted.
  std::optional<LpOutcome> run_warm(const Eigen::VectorXd& cost) {
    switch (dual_iterate(cost)) {
      case DualResult::kFailed:
        return std::nullopt;
      case DualResult::kInfeasible:
        return LpOutcome{SolveStatus::kInfeasible, {}, 0.0, iterations_, nullptr};
      case DualResult::kPrimalFeasible:
        break;
    }
    if (!iterate(cost)) return std::nullopt;
    return finish(cost);
  }

  RevisedSimplex(const LpProblem& lp, const Eigen::VectorXd& lower, const Eigen::VectorXd& upper, const Basis& warm)
      : m_(static_cast<int>(lp.a.rows())), n_(static_cast<int>(lp.a.cols())), b_(lp.b) {
    total_ = n_ + m_;
    art_begin_ = total_;
    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(lp.a.nonZeros() + m_);
    for (int j = 0; j < n_; ++j) {
      for (Eigen::SparseMatrix<double>::InnerIterator it(lp.a, j); it; ++it) entries.emplace_back(it.row(), j, it.value());
    }
    for (int i = 0; i < m_; ++i) entries.emplace_back(i, n_ + i, 1.0);
    a_.resize(m_, total_);
    a_.setFromTriplets(entries.begin(), entries.end());
    a_.makeCompressed();

    lo_.resize(total_);
    up_.resize(total_);
    x_ = Eigen::VectorXd::Zero(total_);
    lo_.head(n_) = lower;
    up_.head(n_) = upper;
    for (int i = 0; i < m_; ++i) {
      lo_(n_ + i) = lp.cmp[i] == Comparator::kGreaterEqual ? -kInf : 0.0;
      up_(n_ + i) = lp.cmp[i] == Comparator::kLessEqual ? kInf : 0.0;
    }
    if (static_cast<int>(warm.basic.size()) != m_ || static_cast<int>(warm.state.size()) != total_) {
      throw Error(ErrorCode::kInternalConsistency, "warm basis does not fit the problem");
    }
    basis_ = warm.basic;
    state_ = warm.state;
    for (int j = 0; j < total_; ++j) {
      if (state_[j] == VarState::kBasic) continue;
      const bool lf = std::isfinite(lo_(j)), uf = std::isfinite(up_(j));
      VarState s = state_[j];
      if (lf && uf && lo_(j) == up_(j)) s = VarState::kFixed;
      else if (s == VarState::kAtUpper && !uf) s = lf ? VarState::kAtLower : VarState::kFree;
      else if (s != VarState::kAtUpper && lf) s = VarState::kAtLower;
      else if (s != VarState::kAtUpper) s = uf ? VarState::kAtUpper : VarState::kFree;
      state_[j] = s;
      x_(j) = s == VarState::kAtUpper ? up_(j) : (s == VarState::kFree ? 0.0 : lo_(j));
    }
    if (warm.inverse.rows() == m_ && warm.inverse.cols() == m_) {
      binv_ = warm.inverse;
      since_refactor_ = warm.updates;
      recompute_basic();
    } else {
      refactor();
    }
  }

 private:
  using Column = Eigen::SparseMatrix<double>::InnerIterator;

  VarState initial_state(int j) const {
    const bool lf = std::isfinite(lo_(j)), uf = std::isfinite(up_(j));
    if (lf && uf && lo_(j) == up_(j)) return VarState::kFixed;
    if (lf && x_(j) == lo_(j)) return VarState::kAtLower;
    if (uf && x_(j) == up_(j)) return VarState::kAtUpper;
    return VarState::kFree;
  }

  // Replaces basic artificials, all at zero after phase 1, by structural or
  // slack columns through degenerate pivots. Rows with no usable column are
  // redundant and keep their artificial.
  void drive_out_artificials() {
    for (int row = 0; row < m_; ++row) {
      const int leaving = basis_[row];
      if (leaving < art_begin_) continue;
      const Eigen::RowVectorXd rho = binv_.row(row);
      int enter = -1;
      double best = 1e-7;
      for (int j = 0; j < art_begin_; ++j) {
        if (state_[j] == VarState::kBasic) continue;
        double alpha = 0.0;
        for (Column c(a_, j); c; ++c) alpha += c.value() * rho(c.row());
        if (std::abs(alpha) > best) {
          best = std::abs(alpha);
          enter = j;
        }
      }
      if (enter < 0) continue;
      const Eigen::VectorXd column = ftran(enter);
      pivot(row, column);
      basis_[row] = enter;
      state_[enter] = VarState::kBasic;
      x_(leaving) = 0.0;
      state_[leaving] = VarState::kFixed;
    }
  }

  LpOutcome finish(const Eigen::VectorXd& cost) {
    recompute_basic();
    LpOutcome out;
    out.status = SolveStatus::kOptimal;
    out.x = x_.head(n_);
    for (int j = 0; j < n_; ++j) out.x(j) = std::clamp(out.x(j), lo_(j), up_(j));
    out.objective = cost.head(n_).dot(out.x);
    out.iterations = iterations_;
    if (std::all_of(basis_.begin(), basis_.end(), [&](int c) { return c < art_begin_; })) {
      auto basis = std::make_shared<Basis>();
      basis->basic = basis_;
      basis->state.assign(state_.begin(), state_.begin() + n_ + m_);
      basis->inverse = binv_;
      basis->updates = since_refactor_;
      out.basis = std::move(basis);
    }
    return out;
  }

  void recompute_basic() {
    Eigen::VectorXd r = b_;
    for (int j = 0; j < total_; ++j) {
      if (state_[j] == VarState::kBasic || x_(j) == 0.0) continue;
      for (Column it(a_, j); it; ++it) r(it.row()) -= it.value() * x_(j);
    }
    const Eigen::VectorXd xb = binv_ * r;
    for (int i = 0; i < m_; ++i) x_(basis_[i]) = xb(i);
  }

  enum class DualResult { kPrimalFeasible, kInfeasible, kFailed };

  // Bounded dual simplex. kFailed means the start was not dual feasible or
  // progress stalled; the caller then re-solves from scratch.
  DualResult dual_iterate(const Eigen::VectorXd& cost) {
    const long limit = 20L * (m_ + total_) + 100;
    Eigen::VectorXd cb(m_);
    Eigen::VectorXd d(total_);
    for (long it = 0;; ++it) {
      if (it > limit) return DualResult::kFailed;
      if (since_refactor_ >= std::max(kRefactorEvery, m_)) refactor();
      for (int i = 0; i < m_; ++i) cb(i) = cost(basis_[i]);
      const Eigen::VectorXd y = binv_.transpose() * cb;
      for (int j = 0; j < total_; ++j) {
        const VarState s = state_[j];
        if (s == VarState::kBasic || s == VarState::kFixed) continue;
        double dj = cost(j);
        for (Column c(a_, j); c; ++c) dj -= c.value() * y(c.row());
        if ((s == VarState::kAtLower && dj < -1e-7) || (s == VarState::kAtUpper && dj > 1e-7) ||
            (s == VarState::kFree && std::abs(dj) > 1e-7)) {
          return DualResult::kFailed;
        }
        d(j) = dj;
      }

      int row = -1;
      double worst = kFeasTol;
      for (int i = 0; i < m_; ++i) {
        const int bv = basis_[i];
        const double viol = std::max(lo_(bv) - x_(bv), x_(bv) - up_(bv));
        if (viol > worst) {
          worst = viol;
          row = i;
        }
      }
      if (row < 0) return DualResult::kPrimalFeasible;

      const int leaving = basis_[row];
      const bool below = x_(leaving) < lo_(leaving);
      const Eigen::RowVectorXd rho = binv_.row(row);
      int enter = -1;
      double best_ratio = kInf, best_alpha = 0.0;
      for (int j = 0; j < total_; ++j) {
        const VarState s = state_[j];
        if (s == VarState::kBasic || s == VarState::kFixed) continue;
        double alpha = 0.0;
        for (Column c(a_, j); c; ++c) alpha += c.value() * rho(c.row());
        if (std::abs(alpha) < kPivotTol) continue;
        // x_leaving moves by -alpha * dx_j; it must move towards its bound.
        const bool can_up = s == VarState::kAtLower || s == VarState::kFree;
        const bool can_down = s == VarState::kAtUpper || s == VarState::kFree;
        const bool ok = below ? ((alpha < 0 && can_up) || (alpha > 0 && can_down))
                              : ((alpha > 0 && can_up) || (alpha < 0 && can_down));
        if (!ok) continue;
        const double ratio = std::abs(d(j)) / std::abs(alpha);
        if (ratio < best_ratio - 1e-12 || (ratio <= best_ratio + 1e-12 && std::abs(alpha) > best_alpha)) {
          best_ratio = ratio;
          best_alpha = std::abs(alpha);
          enter = j;
        }
      }
      if (enter < 0) return row_cannot_reach_bound(row, rho, below) ? DualResult::kInfeasible : DualResult::kFailed;

      const Eigen::VectorXd column = ftran(enter);
      if (std::abs(column(row)) < kPivotTol) return DualResult::kFailed;
      const double target = below ? lo_(leaving) : up_(leaving);
      const double step = (x_(leaving) - target) / column(row);
      x_(enter) += step;
      for (int i = 0; i < m_; ++i) x_(basis_[i]) -= column(i) * step;
      x_(leaving) = target;
      state_[leaving] = lo_(leaving) == up_(leaving) ? VarState::kFixed
                        : below                      ? VarState::kAtLower
                                                     : VarState::kAtUpper;
      pivot(row, column);
      basis_[row] = enter;
      state_[enter] = VarState::kBasic;
      ++iterations_;
    }
  }

  // Row `row` of B^-1 A x = b reads x_r = rho b - sum over nonbasic j of
  // alpha_j x_j. True if no choice of nonbasic values within their bounds
  // moves x_r back to its violated bound, which proves infeasibility.
  bool row_cannot_reach_bound(int row, const Eigen::RowVectorXd& rho, bool below) const {
    const int leaving = basis_[row];
    double best = rho.dot(b_);
    for (int j = 0; j < total_; ++j) {
      if (state_[j] == VarState::kBasic) continue;
      double alpha = 0.0;
      for (Column c(a_, j); c; ++c) alpha += c.value() * rho(c.row());
      if (std::abs(alpha) < 1e-11) continue;  // rounding noise
      // Extreme of -alpha * x_j in the direction of the violated bound.
      const double pick = (alpha < 0) == below ? up_(j) : lo_(j);
      if (!std::isfinite(pick)) return false;
      best -= alpha * pick;
    }
    const double target = below ? lo_(leaving) : up_(leaving);
    const double slack = 1e-6 * (1.0 + std::abs(target));
    return below ? best < target - slack : best > target + slack;
  }

  void refactor() {
    Eigen::MatrixXd basis_matrix = Eigen::MatrixXd::Zero(m_, m_);
    for (int i = 0; i < m_; ++i) {
      for (Column it(a_, basis_[i]); it; ++it) basis_matrix(it.row(), i) = it.value();
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis_matrix);
    if (m_ > 0 && !(lu.rcond() > 1e-13)) {
      throw Error(ErrorCode::kNumeric, "simplex basis became numerically singular");
    }
    binv_ = lu.inverse();
    since_refactor_ = 0;
    recompute_basic();
  }

  // B^-1 times column j of the constraint matrix.
  Eigen::VectorXd ftran(int j) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(m_);
    for (Column it(a_, j); it; ++it) out.noalias() += it.value() * binv_.col(it.row());
    return out;
  }

  // Returns false if the objective is unbounded below.
  bool iterate(const Eigen::VectorXd& cost) {
    int degenerate = 0;
    bool bland = false;
    const long limit = 200L * (m_ + total_) + 1000;
    Eigen::VectorXd cb(m_);
    for (long it = 0;; ++it) {
      if (it > limit) throw Error(ErrorCode::kNumeric, "simplex iteration limit exceeded");
      if (since_refactor_ >= std::max(kRefactorEvery, m_)) refactor();

      for (int i = 0; i < m_; ++i) cb(i) = cost(basis_[i]);
      const Eigen::VectorXd y = binv_.transpose() * cb;

      int enter = -1;
      double enter_dir = 0.0;
      double best = 0.0;
      for (int j = 0; j < total_; ++j) {
        const VarState s = state_[j];
        if (s == VarState::kBasic || s == VarState::kFixed) continue;
        double d = cost(j);
        for (Column c(a_, j); c; ++c) d -= c.value() * y(c.row());
        double dir = 0.0;
        switch (s) {
          case VarState::kAtLower: if (d < -kOptTol) dir = 1.0; break;
          case VarState::kAtUpper: if (d > kOptTol) dir = -1.0; break;
          case VarState::kFree: if (std::abs(d) > kOptTol) dir = d < 0 ? 1.0 : -1.0; break;
          default: break;
        }
        if (dir == 0.0) continue;
        if (bland) { enter = j; enter_dir = dir; break; }
        if (std::abs(d) > best) { best = std::abs(d); enter = j; enter_dir = dir; }
      }
      if (enter < 0) return true;

      const Eigen::VectorXd column = ftran(enter);
      const double own_range = up_(enter) - lo_(enter);
      int leave_row = -1;
      double theta = kInf;

      auto exact_ratio = [&](int i, double& ratio) {
        const double alpha = column(i);
        if (std::abs(alpha) < kPivotTol) return false;
        const double rate = -enter_dir * alpha;
        const int bv = basis_[i];
        if (rate < 0 && std::isfinite(lo_(bv))) { ratio = std::max(0.0, (x_(bv) - lo_(bv)) / -rate); return true; }
        if (rate > 0 && std::isfinite(up_(bv))) { ratio = std::max(0.0, (up_(bv) - x_(bv)) / rate); return true; }
        return false;
      };

      if (bland) {
        for (int i = 0; i < m_; ++i) {
          double ratio;
          if (!exact_ratio(i, ratio)) continue;
          if (ratio < theta - 1e-15 || (std::abs(ratio - theta) <= 1e-15 && basis_[i] < basis_[leave_row])) {
            theta = ratio;
            leave_row = i;
          }
        }
      } else {
        double relaxed = kInf;
        for (int i = 0; i < m_; ++i) {
          const double alpha = column(i);
          if (std::abs(alpha) < kPivotTol) continue;
          const double rate = -enter_dir * alpha;
          const int bv = basis_[i];
          if (rate < 0 && std::isfinite(lo_(bv))) relaxed = std::min(relaxed, (x_(bv) - lo_(bv) + kFeasTol) / -rate);
          if (rate > 0 && std::isfinite(up_(bv))) relaxed = std::min(relaxed, (up_(bv) - x_(bv) + kFeasTol) / rate);
        }
        double best_alpha = 0.0;
        for (int i = 0; i < m_; ++i) {
          double ratio;
          if (!exact_ratio(i, ratio) || ratio > relaxed) continue;
          if (std::abs(column(i)) > best_alpha) {
            best_alpha = std::abs(column(i));
            theta = ratio;
            leave_row = i;
          }
        }
      }

      const bool flip = own_range <= theta;
      if (flip) theta = own_range;
      if (!std::isfinite(theta)) return false;

      x_(enter) += enter_dir * theta;
      for (int i = 0; i < m_; ++i) x_(basis_[i]) -= enter_dir * theta * column(i);
      ++iterations_;

      if (theta <= 1e-12) {
        if (++degenerate > kDegenerateBeforeBland) bland = true;
      } else {
        degenerate = 0;
        bland = false;
      }

      if (flip) {
        if (enter_dir > 0) { x_(enter) = up_(enter); state_[enter] = VarState::kAtUpper; }
        else { x_(enter) = lo_(enter); state_[enter] = VarState::kAtLower; }
        continue;
      }

      const int leaving = basis_[leave_row];
      const double rate = -enter_dir * column(leave_row);
      if (rate < 0) { x_(leaving) = lo_(leaving); state_[leaving] = VarState::kAtLower; }
      else { x_(leaving) = up_(leaving); state_[leaving] = VarState::kAtUpper; }
      if (lo_(leaving) == up_(leaving)) state_[leaving] = VarState::kFixed;

      pivot(leave_row, column);
      basis_[leave_row] = enter;
      state_[enter] = VarState::kBasic;
    }
  }

  // Product-form update of the basis inverse as one column-major rank-1 step.
  void pivot(int row, const Eigen::VectorXd& column) {
    const Eigen::RowVectorXd pivot_row = binv_.row(row) / column(row);
    Eigen::VectorXd factors = column;
    factors(row) -= 1.0;
    binv_.noalias() -= factors * pivot_row;
    ++since_refactor_;
  }

  int m_, n_, total_ = 0, art_begin_ = 0;
  Eigen::VectorXd b_;
  Eigen::SparseMatrix<double> a_;
  Eigen::MatrixXd binv_;
  Eigen::VectorXd lo_, up_, x_;
  std::vector<VarState> state_;
  std::vector<int> basis_;
  int since_refactor_ = 0;
  int iterations_ = 0;
};

}  // namespace

LpProblem make_lp(const Model& model) {
  const int n = model.num_variables();
  const int m = model.num_constraints();
  LpProblem lp;
  std::vector<Eigen::Triplet<double>> entries;
  lp.b.resize(m);
  lp.cmp.resize(m);
  for (int i = 0; i < m; ++i) {
    const auto& c = model.constraints()[i];
    for (const auto& t : c.terms) entries.emplace_back(i, t.var, t.coef);
    lp.b(i) = c.rhs;
    lp.cmp[i] = c.cmp;
  }
  lp.a.resize(m, n);
  lp.a.setFromTriplets(entries.begin(), entries.end());  // sums duplicates
  lp.a.makeCompressed();
  lp.sense_sign = model.sense() == ObjectiveSense::kMaximize ? -1.0 : 1.0;
  lp.c = Eigen::VectorXd::Zero(n);
  for (const auto& t : model.objective().terms) lp.c(t.var) += lp.sense_sign * t.coef;
  lp.objective_constant = model.objective().constant;
  lp.lower.resize(n);
  lp.upper.resize(n);
  for (int j = 0; j < n; ++j) {
    lp.lower(j) = model.variable(j).lower;
    lp.upper(j) = model.variable(j).upper;
  }
  return lp;
}

LpOutcome solve_bounded_lp(const LpProblem& lp, const Eigen::VectorXd& lower, const Eigen::VectorXd& upper,
                           const Basis* warm) {
  for (Eigen::Index j = 0; j < lower.size(); ++j) {
    if (lower(j) > upper(j) + kFeasTol) return LpOutcome{SolveStatus::kInfeasible, {}, 0.0, 0, nullptr};
  }
  if (warm != nullptr) {
    try {
      RevisedSimplex simplex(lp, lower, upper, *warm);
      Eigen::VectorXd cost = Eigen::VectorXd::Zero(lp.a.cols() + lp.a.rows());
      cost.head(lp.a.cols()) = lp.c;
      if (auto out = simplex.run_warm(cost)) return *std::move(out);
    } catch (const Error&) {
      // Singular or inconsistent warm basis: solve cold below.
    }
  }
  RevisedSimplex simplex(lp, lower, upper);
  return simplex.run(lp.c);
}

}  // namespace proplace::milp::detail
