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

#include "proplace/proplace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "proplace/encoding.hpp"
#include "proplace/milp.hpp"

namespace proplace {

namespace {

constexpr double kReplayTolerance = 1e-6;

double mean_l1(const Vec& a, const Vec& b) { return (a - b).cwiseAbs().sum() / static_cast<double>(a.size()); }

}  // namespace

void ProplaceConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::kInvalidArgument, what); };
  if (!(delta > 0.0) || !std::isfinite(delta)) fail("delta must be positive and finite");
  if (k < 1) fail("k must be at least 1");
  if (!(t > 0.0) || !(sigma > t) || !std::isfinite(sigma)) fail("tolerances must satisfy sigma > t > 0");
  if (max_iters < 1) fail("max_iters must be at least 1");
  if (!(milp_time_limit.count() > 0.0)) fail("MILP time limit must be positive");
}

OuterResult outer_minimisation(const Vec& x, const PlausibleRegion& region, const std::vector<Network>& cut_models,
                               double sigma, const milp::SolveOptions& solve, const ModelObserver& observer) {
  const int d = static_cast<int>(x.size());
  if (cut_models.empty()) throw Error(ErrorCode::kInvalidArgument, "outer problem needs at least one model");
  if (region.vertices.empty() || region.dim() != d) {
    throw Error(ErrorCode::kInputShape, "region and input disagree on dimension");
  }
  const Vec lo = region.lower(), hi = region.upper();

  milp::Model model;
  std::vector<milp::LinearExpr> xp(d);
  milp::LinearExpr cost;
  for (int j = 0; j < d; ++j) {
    const std::string tag = std::to_string(j);
    const milp::VarId v = model.add_continuous("xp" + tag, lo(j), hi(j));
    xp[j].add(v, 1.0);
    const milp::VarId s = model.add_continuous("dist" + tag, 0.0, std::max(hi(j) - x(j), x(j) - lo(j)) + 1.0);
    model.add_constraint(milp::LinearExpr().add(s, 1.0).add(v, -1.0), milp::Comparator::kGreaterEqual, -x(j),
                         "abs_hi" + tag);
    model.add_constraint(milp::LinearExpr().add(s, 1.0).add(v, 1.0), milp::Comparator::kGreaterEqual, x(j),
                         "abs_lo" + tag);
    cost.add(s, 1.0 / d);
  }

  // x' is a convex combination of the region's vertices.
  std::vector<milp::VarId> lambda;
  milp::LinearExpr total;
  for (std::size_t l = 0; l < region.vertices.size(); ++l) {
    lambda.push_back(model.add_continuous("lambda" + std::to_string(l), 0.0, 1.0));
    total.add(lambda.back(), 1.0);
  }
  model.add_constraint(total, milp::Comparator::kEqual, 1.0, "convexity");
  for (int j = 0; j < d; ++j) {
    milp::LinearExpr hull = xp[j];
    for (std::size_t l = 0; l < region.vertices.size(); ++l) hull.add(lambda[l], -region.vertices[l](j));
    model.add_constraint(hull, milp::Comparator::kEqual, 0.0, "hull" + std::to_string(j));
  }

  for (std::size_t c = 0; c < cut_models.size(); ++c) {
    if (cut_models[c].input_dim() != d) throw Error(ErrorCode::kInputShape, "cut model dimension mismatch");
    const std::string prefix = "m" + std::to_string(c) + "_";
    const NetworkEncoding enc = encode_network_forward(model, cut_models[c], xp, lo, hi, prefix);
    model.add_constraint(milp::LinearExpr().add(enc.output, 1.0), milp::Comparator::kGreaterEqual, sigma,
                         prefix + "valid");
  }
  model.set_objective(cost, milp::ObjectiveSense::kMinimize);
  if (observer) observer(model, "outer" + std::to_string(cut_models.size()));

  const milp::Solution sol = milp::solve(model, solve);
  if (sol.status == milp::SolveStatus::kTimeout) throw Error(ErrorCode::kNonConvergence, "outer MILP timed out");
  if (sol.status != milp::SolveStatus::kOptimal) {
    throw Error(ErrorCode::kNoFeasibleCe,
                "outer MILP returned " + std::string(milp::status_name(sol.status)) + "; no plausible robust point");
  }

  OuterResult out;
  out.x_prime.resize(d);
  for (int j = 0; j < d; ++j) out.x_prime(j) = std::clamp(xp[j].evaluate(sol.values), lo(j), hi(j));
  out.objective = mean_l1(x, out.x_prime);
  for (const Network& cut : cut_models) {
    const double logit = cut.forward_logit(out.x_prime);
    if (logit < sigma - kReplayTolerance * (1.0 + std::abs(sigma))) {
      throw Error(ErrorCode::kEncoding, "outer solution replays to logit " + std::to_string(logit) +
                                            " below the required " + std::to_string(sigma));
    }
  }
  return out;
}

InnerResult inner_maximisation(const Network& net, const Vec& x_prime, const ModelShiftSet& shifts,
                               const CertifyOptions& options) {
  WorstCase wc = find_worst_case(net, shifts, x_prime, options);
  return {std::move(wc.model), -wc.worst_logit};
}

CeResult generate_in_region(const Vec& x, const Network& net, const PlausibleRegion& region,
                            const ProplaceConfig& config, double vertex_margin, const ModelObserver& observer) {
  config.validate();
  if (x.size() != net.input_dim()) throw Error(ErrorCode::kInputShape, "input dimension does not match the network");
  const ModelShiftSet shifts(config.delta);

  CeResult result;
  result.x = x;
  result.region = region;
  result.sigma_used = config.sigma;
  result.t_used = config.t;
  if (vertex_margin > 0.0 && config.sigma > 0.5 * vertex_margin) {
    result.sigma_used = 0.5 * vertex_margin;
    result.t_used = config.t * result.sigma_used / config.sigma;
  }

  milp::SolveOptions solve;
  solve.time_limit = config.milp_time_limit;
  solve.absolute_gap = 1e-9;
  CertifyOptions certify;
  certify.solve = solve;
  certify.observer = observer;

  result.cut_models.push_back(net);
  for (int iter = 1; iter <= config.max_iters; ++iter) {
    const OuterResult outer = outer_minimisation(x, region, result.cut_models, result.sigma_used, solve, observer);
    const InnerResult inner = inner_maximisation(net, outer.x_prime, shifts, certify);
    const double worst = -inner.neg_logit;
    result.trace.push_back({outer.x_prime, outer.objective, worst});
    result.iterations = iter;
    if (worst >= result.sigma_used - result.t_used) {
      result.x_prime = outer.x_prime;
      result.objective = outer.objective;
      const Certificate cert = certify_delta_robust(net, shifts, result.x_prime, certify);
      result.certified = cert.robust;
      result.certified_worst_logit = cert.worst_logit;
      return result;
    }
    result.cut_models.push_back(inner.model);
  }
  throw NonConvergenceError("no robust counterfactual within " + std::to_string(config.max_iters) + " iterations",
                            result.trace);
}

Explainer::Explainer(Network net, const Dataset& data, ProplaceConfig config, ModelObserver observer)
    : net_(std::move(net)),
      config_(std::move(config)),
      observer_(std::move(observer)),
      tree_(build_tree(data, net_, 1, Metric::kL1)) {
  config_.validate();
  CertifyOptions opts;
  opts.solve.time_limit = config_.milp_time_limit;
  opts.observer = observer_;
  robustness_ = std::make_unique<CachedRobustness>(net_, ModelShiftSet(config_.delta), opts);
}

CeResult Explainer::explain(const Vec& x) const {
  if (x.size() != net_.input_dim()) throw Error(ErrorCode::kInputShape, "input dimension does not match the network");
  if (net_.forward_logit(x) >= 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "input is already assigned the desired class");
  }
  const RobustNeighbours nbrs =
      robust_knn(x, config_.k, tree_, [this](int slot, const Vec& p) { return (*robustness_)(slot, p); });
  double margin = std::numeric_limits<double>::infinity();
  for (int slot : nbrs.slots) margin = std::min(margin, robustness_->margin(slot).value_or(0.0));
  CeResult result = generate_in_region(x, net_, make_region(x, nbrs.points), config_, margin, observer_);
  result.neighbour_ids = nbrs.ids;
  return result;
}

CeResult generate(const Vec& x, const Network& net, const Dataset& data, const ProplaceConfig& config) {
  return Explainer(net, data, config).explain(x);
}

}  // namespace proplace
