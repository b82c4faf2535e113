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

#include <algorithm>
#include <random>
#include <vector>

#include "proplace/errors.hpp"
#include "proplace/generators.hpp"
#include "proplace/proplace.hpp"
#include "proplace/training.hpp"

using namespace proplace;

namespace {

Vec v1(double a) { return Vec::Constant(1, a); }

Network tiny_net() {
  return Network({Mat::Constant(1, 1, 1.0), Mat::Constant(1, 1, 1.0)}, {Vec::Zero(1), Vec::Constant(1, -1.0)});
}

Network all_low_corner() {
  return Network({Mat::Constant(1, 1, 0.9), Mat::Constant(1, 1, 0.9)}, {Vec::Constant(1, -0.1), Vec::Constant(1, -1.1)});
}

// Smallest point of [a, b] where every model reaches sigma, by bisection
// after a grid scan for the first feasible cell.
double segment_oracle(const std::vector<Network>& models, double a, double b, double sigma) {
  auto ok = [&](double x) {
    return std::all_of(models.begin(), models.end(), [&](const Network& m) { return m.forward_logit(v1(x)) >= sigma; });
  };
  if (ok(a)) return a;
  const int n = 20000;
  for (int i = 1; i <= n; ++i) {
    double hi = a + (b - a) * i / n;
    if (!ok(hi)) continue;
    double lo = a + (b - a) * (i - 1) / n;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (ok(mid) ? hi : lo) = mid;
    }
    return hi;
  }
  return std::nan("");
}

ProplaceConfig tiny_config() {
  ProplaceConfig c;
  c.delta = 0.1;
  c.k = 1;
  c.sigma = 1e-5;
  c.t = 1e-6;
  return c;
}

}  // namespace

TEST_CASE("config validation") {
  CHECK_NOTHROW(ProplaceConfig{}.validate());
  auto rejects = [](auto edit) {
    ProplaceConfig c;
    edit(c);
    try {
      c.validate();
    } catch (const Error& e) {
      return e.code() == ErrorCode::kInvalidArgument;
    }
    return false;
  };
  CHECK(rejects([](ProplaceConfig& c) { c.delta = 0.0; }));
  CHECK(rejects([](ProplaceConfig& c) { c.k = 0; }));
  CHECK(rejects([](ProplaceConfig& c) { c.sigma = c.t; }));
  CHECK(rejects([](ProplaceConfig& c) { c.t = 0.0; }));
  CHECK(rejects([](ProplaceConfig& c) { c.max_iters = 0; }));
}

TEST_CASE("outer problem on the tiny network") {
  const PlausibleRegion region = make_region(v1(0.5), {v1(2.0)});
  const double sigma = 1e-9;

  const OuterResult first = outer_minimisation(v1(0.5), region, {tiny_net()}, sigma);
  CHECK(first.x_prime(0) == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(first.objective == doctest::Approx(0.5).epsilon(1e-7));

  const std::vector<Network> cuts = {tiny_net(), all_low_corner()};
  const OuterResult second = outer_minimisation(v1(0.5), region, cuts, sigma);
  CHECK(second.x_prime(0) == doctest::Approx(segment_oracle(cuts, 0.5, 2.0, sigma)).epsilon(1e-7));
  CHECK(second.x_prime(0) == doctest::Approx(1.19 / 0.81).epsilon(1e-7));

  // An input that is already valid is its own optimum.
  const PlausibleRegion around = make_region(v1(1.7), {v1(2.0)});
  const OuterResult same = outer_minimisation(v1(1.7), around, cuts, sigma);
  CHECK(same.x_prime(0) == doctest::Approx(1.7));
  CHECK(same.objective == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("outer problem reports infeasibility") {
  const PlausibleRegion region = make_region(v1(0.1), {v1(0.6)});
  try {
    outer_minimisation(v1(0.1), region, {tiny_net()}, 1e-4);
    FAIL("expected infeasible");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNoFeasibleCe);
  }
}

TEST_CASE("outer problem matches a segment oracle on random cut sets") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g(0.0, 1.0);
  int solved = 0;
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Network> cuts;
    for (int m = 0; m < 3; ++m) {
      cuts.push_back(Network({Mat::NullaryExpr(4, 1, [&] { return g(rng); }), Mat::NullaryExpr(1, 4, [&] { return g(rng); })},
                             {Vec::NullaryExpr(4, [&] { return g(rng); }), Vec::Constant(1, g(rng))}));
    }
    const double a = -1.0, b = 1.0;
    const double expected = segment_oracle(cuts, a, b, 1e-6);
    const PlausibleRegion region = make_region(v1(a), {v1(b)});
    if (std::isnan(expected)) {
      CHECK_THROWS_AS(outer_minimisation(v1(a), region, cuts, 1e-6), Error);
      continue;
    }
    ++solved;
    CHECK(outer_minimisation(v1(a), region, cuts, 1e-6).x_prime(0) == doctest::Approx(expected).epsilon(1e-6));
  }
  CHECK(solved >= 5);
}

TEST_CASE("inner problem on the tiny network") {
  const InnerResult at2 = inner_maximisation(tiny_net(), v1(2.0), ModelShiftSet(0.1));
  CHECK(at2.neg_logit == doctest::Approx(-0.43));
  CHECK(at2.model == all_low_corner());
  CHECK(at2.model.forward_logit(v1(2.0)) == doctest::Approx(-at2.neg_logit).epsilon(1e-5));

  const InnerResult boundary = inner_maximisation(tiny_net(), v1(1.19 / 0.81), ModelShiftSet(0.1));
  CHECK(std::abs(boundary.neg_logit) < 1e-9);

  const InnerResult degenerate = inner_maximisation(tiny_net(), v1(1.3), ModelShiftSet(1e-12));
  CHECK(degenerate.neg_logit == doctest::Approx(-tiny_net().forward_logit(v1(1.3))).epsilon(1e-9));
}

TEST_CASE("hand-traced run on the tiny network") {
  const PlausibleRegion region = make_region(v1(0.5), {v1(2.0)});
  const CeResult r = generate_in_region(v1(0.5), tiny_net(), region, tiny_config(), 0.43);
  CHECK(r.iterations == 2);
  CHECK(r.certified);
  CHECK(std::abs(r.x_prime(0) - 1.19 / 0.81) < 1e-4);
  REQUIRE(r.trace.size() == 2);
  CHECK(r.trace[0].candidate(0) == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(r.trace[0].worst_logit == doctest::Approx(0.81 - 1.19).epsilon(1e-4));
  CHECK(r.trace[1].objective >= r.trace[0].objective);
  REQUIRE(r.cut_models.size() == 2);
  for (int l = 0; l < 2; ++l) {
    CHECK(r.cut_models[1].weight(l).isApprox(all_low_corner().weight(l), 1e-9));
    CHECK(r.cut_models[1].bias(l).isApprox(all_low_corner().bias(l), 1e-9));
  }
  CHECK(r.sigma_used == 1e-5);
}

TEST_CASE("sigma is clamped below the weakest vertex margin") {
  ProplaceConfig c = tiny_config();
  c.sigma = 1.0;
  c.t = 0.5;
  const PlausibleRegion region = make_region(v1(0.5), {v1(2.0)});
  const CeResult r = generate_in_region(v1(0.5), tiny_net(), region, c, 0.43);
  CHECK(r.sigma_used == doctest::Approx(0.215));
  CHECK(r.t_used == doctest::Approx(0.1075));
  CHECK(r.certified);
}

TEST_CASE("an input that is already robust needs one iteration") {
  const PlausibleRegion region = make_region(v1(1.8), {v1(2.0)});
  const CeResult r = generate_in_region(v1(1.8), tiny_net(), region, tiny_config(), 0.43);
  CHECK(r.iterations == 1);
  CHECK(r.x_prime(0) == doctest::Approx(1.8));
  CHECK(r.objective == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("iteration cap raises non-convergence with the trace") {
  ProplaceConfig c = tiny_config();
  c.max_iters = 1;
  const PlausibleRegion region = make_region(v1(0.5), {v1(2.0)});
  try {
    generate_in_region(v1(0.5), tiny_net(), region, c, 0.43);
    FAIL("expected non-convergence");
  } catch (const NonConvergenceError& e) {
    CHECK(e.code() == ErrorCode::kNonConvergence);
    CHECK(e.trace().size() == 1);
  }
}

TEST_CASE("generate checks its preconditions") {
  Dataset data;
  data.rows = (Mat(4, 1) << 1.2, 1.5, 2.0, 3.0).finished();
  data.labels = Eigen::VectorXi::Ones(4);
  ProplaceConfig c = tiny_config();
  CHECK_THROWS_AS(generate(v1(1.5), tiny_net(), data, c), Error);

  const CeResult ok = generate(v1(0.5), tiny_net(), data, c);
  CHECK(ok.certified);
  CHECK(ok.neighbour_ids == std::vector<int>{1});  // 1.2 is not robust

  // With a huge shift nothing certifies.
  c.delta = 5.0;
  try {
    generate(v1(0.5), tiny_net(), data, c);
    FAIL("expected insufficient neighbours");
  } catch (const InsufficientRobustNeighboursError& e) {
    CHECK(e.found() == 0);
  }
}

TEST_CASE("loop invariants on blobs") {
  const Dataset data = make_blobs(200, 3);
  TrainConfig tc;
  tc.hidden = {6, 6};
  tc.epochs = 40;
  tc.seed = 3;
  const Network net = train(data, tc);
  ProplaceConfig c;
  c.delta = 0.05;
  c.k = 5;
  const Explainer ex(net, data, c);
  int explained = 0;
  for (int i = 0; i < data.size() && explained < 10; ++i) {
    const Vec x = data.point(i);
    if (net.forward_logit(x) >= 0.0) continue;
    ++explained;
    const CeResult r = ex.explain(x);
    CHECK(r.certified);
    CHECK(r.certified_worst_logit >= 0.0);
    CHECK(r.region.contains(r.x_prime));
    CHECK(r.cut_models.size() == r.trace.size());
    CHECK(r.iterations <= c.max_iters);
    double farthest = 0.0;
    for (const Vec& v : r.region.vertices) farthest = std::max(farthest, (v - x).cwiseAbs().mean());
    CHECK(r.objective <= farthest + 1e-9);
    const OuterResult plain = outer_minimisation(x, r.region, {net}, r.sigma_used);
    CHECK(r.objective >= plain.objective - 1e-9);
    for (std::size_t i = 1; i < r.trace.size(); ++i) {
      CHECK(r.trace[i].objective >= r.trace[i - 1].objective - 1e-9);
      CHECK(r.cut_models[i].forward_logit(r.trace[i - 1].candidate) < r.sigma_used - r.t_used);
    }
  }
  CHECK(explained == 10);
}
