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

#include <chrono>
#include <memory>
#include <vector>

#include "proplace/certify.hpp"
#include "proplace/dataset.hpp"
#include "proplace/errors.hpp"
#include "proplace/kdtree.hpp"
#include "proplace/neighbors.hpp"
#include "proplace/network.hpp"

namespace proplace {

struct ProplaceConfig {
  double delta = 0.02;
  int k = 10;
  /// Validity margin required of every cut model in the outer problem.
  double sigma = 1e-4;
  /// Slack allowed on the worst-case logit at termination.
  double t = 1e-5;
  int max_iters = 50;
  std::chrono::duration<double> milp_time_limit = std::chrono::seconds(60);

  /// Throws kInvalidArgument unless delta > 0, k >= 1, sigma > t > 0 and max_iters >= 1.
  void validate() const;
};

struct IterationRecord {
  Vec candidate;
  double objective = 0.0;
  /// Minimum logit over the shift set at `candidate`.
  double worst_logit = 0.0;
};

struct CeResult {
  Vec x;
  Vec x_prime;
  int iterations = 0;
  /// Δ′: the original model followed by every appended worst-case model.
  std::vector<Network> cut_models;
  /// Mean absolute feature difference between x and x_prime.
  double objective = 0.0;
  bool certified = false;
  /// Worst-case logit from the final independent certification.
  double certified_worst_logit = 0.0;
  std::vector<IterationRecord> trace;
  double sigma_used = 0.0;
  double t_used = 0.0;
  std::vector<int> neighbour_ids;
  PlausibleRegion region;
};

class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, std::vector<IterationRecord> trace)
      : Error(ErrorCode::kNonConvergence, what), trace_(std::move(trace)) {}
  const std::vector<IterationRecord>& trace() const { return trace_; }

 private:
  std::vector<IterationRecord> trace_;
};

struct OuterResult {
  Vec x_prime;
  double objective = 0.0;
};

/// Closest point of the region (mean L1) on which every cut model has
/// logit >= sigma. Throws kNoFeasibleCe when infeasible.
OuterResult outer_minimisation(const Vec& x, const PlausibleRegion& region, const std::vector<Network>& cut_models,
                               double sigma, const milp::SolveOptions& solve = {}, const ModelObserver& observer = {});

struct InnerResult {
  Network model;
  /// Maximum of the negated logit over the shift set.
  double neg_logit = 0.0;
};

/// Worst-case shifted model at x_prime.
InnerResult inner_maximisation(const Network& net, const Vec& x_prime, const ModelShiftSet& shifts,
                               const CertifyOptions& options = {});

/// Runs the cutting-plane loop inside a fixed region. `vertex_margin` is a
/// lower bound on the worst-case logit of every neighbour vertex; sigma is
/// clamped to half of it when positive so those vertices stay feasible.
CeResult generate_in_region(const Vec& x, const Network& net, const PlausibleRegion& region,
                            const ProplaceConfig& config, double vertex_margin, const ModelObserver& observer = {});

/// Builds the candidate tree and robustness cache once and explains many
/// inputs. `explain` is safe to call from several threads.
class Explainer {
 public:
  Explainer(Network net, const Dataset& data, ProplaceConfig config, ModelObserver observer = {});

  CeResult explain(const Vec& x) const;

  const Network& network() const { return net_; }
  const ProplaceConfig& config() const { return config_; }
  const KdTree& tree() const { return tree_; }
  int certification_solves() const { return robustness_->milp_calls(); }

 private:
  Network net_;
  ProplaceConfig config_;
  ModelObserver observer_;
  KdTree tree_;
  std::unique_ptr<CachedRobustness> robustness_;
};

/// One-shot form of Explainer::explain. Requires forward_logit(net, x) < 0.
CeResult generate(const Vec& x, const Network& net, const Dataset& data, const ProplaceConfig& config);

}  // namespace proplace
