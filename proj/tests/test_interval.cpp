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

#include <random>
#include <vector>

#include "oracles.hpp"
#include "proplace/certify.hpp"
#include "proplace/encoding.hpp"
#include "proplace/errors.hpp"
#include "proplace/interval.hpp"

using namespace proplace;

namespace {

Network tiny_net() {
  return Network({Mat::Constant(1, 1, 1.0), Mat::Constant(1, 1, 1.0)}, {Vec::Zero(1), Vec::Constant(1, -1.0)});
}

Vec point(std::initializer_list<double> v) {
  Vec x(static_cast<Eigen::Index>(v.size()));
  int i = 0;
  for (double e : v) x(i++) = e;
  return x;
}

}  // namespace

TEST_CASE("abstraction widens every parameter by delta") {
  const IntervalNetwork single = abstract(Network({Mat::Constant(1, 1, 1.0)}, {Vec::Zero(1)}), ModelShiftSet(0.1));
  CHECK(single.weight_lower(0)(0, 0) == doctest::Approx(0.9));
  CHECK(single.weight_upper(0)(0, 0) == doctest::Approx(1.1));

  const IntervalNetwork narrow = abstract(tiny_net(), ModelShiftSet(1e-9));
  CHECK(narrow.weight_upper(0)(0, 0) - narrow.weight_lower(0)(0, 0) == doctest::Approx(2e-9).epsilon(1e-6));

  // 2 -> 1 -> 1 has five parameters.
  const Network five({Mat::Constant(1, 2, 0.5), Mat::Constant(1, 1, -2.0)}, {Vec::Zero(1), Vec::Zero(1)});
  const IntervalNetwork inet = abstract(five, ModelShiftSet(0.1));
  int count = 0;
  for (int l = 0; l < inet.num_layers(); ++l) {
    const Mat wd = inet.weight_upper(l) - inet.weight_lower(l);
    const Vec bd = inet.bias_upper(l) - inet.bias_lower(l);
    for (double w : wd.reshaped()) {
      CHECK(w == doctest::Approx(0.2));
      ++count;
    }
    for (double b : bd) {
      CHECK(b == doctest::Approx(0.2));
      ++count;
    }
  }
  CHECK(count == 5);
}

TEST_CASE("shift radius must be positive and finite") {
  for (double d : {0.0, -0.1, std::numeric_limits<double>::infinity(), std::nan("")}) {
    try {
      ModelShiftSet s(d);
      FAIL("accepted delta " << d);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kInvalidShift);
    }
  }
}

TEST_CASE("propagation on the tiny network") {
  const OutputBound b = propagate_bounds(abstract(tiny_net(), ModelShiftSet(0.1)), point({2.0}));
  CHECK(b.l == doctest::Approx(0.43).epsilon(1e-12));
  CHECK(b.u == doctest::Approx(1.63).epsilon(1e-12));

  const Network net = tiny_net();
  for (double x : {-1.0, 0.3, 2.0, 7.5}) {
    const OutputBound t = propagate_bounds(abstract(net, ModelShiftSet(1e-12)), point({x}));
    CHECK(std::abs(t.l - net.forward_logit(point({x}))) < 1e-6);
    CHECK(std::abs(t.u - net.forward_logit(point({x}))) < 1e-6);
  }
  CHECK_THROWS_AS(propagate_bounds(abstract(net, ModelShiftSet(0.1)), point({1.0, 2.0})), Error);
}

TEST_CASE("all-zero network bounds contain sampled models") {
  const Network zero = Network::zeros({1, 1, 1});
  const OutputBound b = propagate_bounds(abstract(zero, ModelShiftSet(0.1)), point({0.0}));
  // Hidden value is at most 0.1, so the output lies in [-0.1 - 0.01, 0.1 + 0.01].
  CHECK(b.l == doctest::Approx(-0.11));
  CHECK(b.u == doctest::Approx(0.11));
  std::mt19937_64 rng(7);
  for (int i = 0; i < 10000; ++i) {
    const double y = oracle::sample_shifted(zero, 0.1, rng).forward_logit(point({0.0}));
    REQUIRE(y >= b.l - 1e-12);
    REQUIRE(y <= b.u + 1e-12);
  }
}

TEST_CASE("certification examples on the tiny network") {
  const Network net = tiny_net();
  const Certificate at2 = certify_delta_robust(net, ModelShiftSet(0.1), point({2.0}));
  CHECK(at2.robust);
  CHECK(at2.exact);
  CHECK(at2.worst_logit == doctest::Approx(0.43).epsilon(1e-9));

  const Certificate at12 = certify_delta_robust(net, ModelShiftSet(0.1), point({1.2}));
  CHECK_FALSE(at12.robust);
  CHECK(at12.worst_logit == doctest::Approx(-0.218).epsilon(1e-9));

  const Certificate tiny = certify_delta_robust(net, ModelShiftSet(1e-12), point({1.5}));
  CHECK(tiny.robust);
  CHECK(tiny.worst_logit == doctest::Approx(0.5).epsilon(1e-9));

  const WorstCase wc = find_worst_case(net, ModelShiftSet(0.1), point({2.0}));
  CHECK(wc.model.weight(0)(0, 0) == doctest::Approx(0.9));
  CHECK(wc.model.bias(0)(0) == doctest::Approx(-0.1));
  CHECK(wc.model.weight(1)(0, 0) == doctest::Approx(0.9));
  CHECK(wc.model.bias(1)(0) == doctest::Approx(-1.1));
}

TEST_CASE("short circuit skips the solve when propagation already proves robustness") {
  CertifyOptions opts;
  opts.short_circuit = true;
  int solves = 0;
  opts.observer = [&](const milp::Model&, const std::string&) { ++solves; };
  const Certificate c = certify_delta_robust(tiny_net(), ModelShiftSet(0.1), point({2.0}), opts);
  CHECK(c.robust);
  CHECK_FALSE(c.exact);
  CHECK(c.worst_logit == doctest::Approx(0.43));
  CHECK(solves == 0);
  const Certificate n = certify_delta_robust(tiny_net(), ModelShiftSet(0.1), point({1.2}), opts);
  CHECK(n.exact);
  CHECK(solves == 1);
}

TEST_CASE("oracle agrees with sampled corners") {
  // The oracle is a minimum, so no sampled model may fall below it, and on
  // single-hidden-layer networks some corner attains it.
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Network net = oracle::random_network(rng, trial % 2 ? std::vector<int>{2, 3, 1} : std::vector<int>{2, 2, 2, 1});
    const Vec x = Vec::Random(2);
    const double worst = oracle::worst_logit(net, 0.1, x);
    for (int s = 0; s < 2000; ++s) {
      REQUIRE(oracle::sample_shifted(net, 0.1, rng, s % 2 == 0).forward_logit(x) >= worst - 1e-9);
    }
  }
}

TEST_CASE("exact certification matches the enumeration oracle") {
  std::mt19937_64 rng(2026);
  const std::vector<std::vector<int>> shapes = {{1, 1, 1}, {2, 3, 1}, {2, 6, 1}, {3, 2, 2, 1}, {2, 3, 3, 1}, {2, 2, 4, 1}};
  int count = 0;
  for (const auto& shape : shapes) {
    for (int rep = 0; rep < 5; ++rep) {
      const Network net = oracle::random_network(rng, shape);
      std::uniform_real_distribution<double> u(-2.0, 2.0);
      const Vec x = Vec::NullaryExpr(shape[0], [&] { return u(rng); });
      for (double delta : {0.01, 0.05, 0.1}) {
        const Certificate c = certify_delta_robust(net, ModelShiftSet(delta), x);
        const double expected = oracle::worst_logit(net, delta, x);
        CAPTURE(count);
        CHECK(std::abs(c.worst_logit - expected) <= 1e-6);
        CHECK(c.robust == (c.worst_logit >= 0.0));
        ++count;
      }
    }
  }
}

TEST_CASE("worst case is bracketed and monotone in delta") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 15; ++trial) {
    const Network net = oracle::random_network(rng, {2, 4, 3, 1});
    const Vec x = Vec::Random(2);
    double previous = net.forward_logit(x);
    for (double delta : {0.005, 0.02, 0.05, 0.1}) {
      const ModelShiftSet shifts(delta);
      const WorstCase wc = find_worst_case(net, shifts, x);
      const OutputBound b = propagate_bounds(abstract(net, shifts), x);
      CHECK(wc.worst_logit >= b.l - 1e-9);
      CHECK(wc.worst_logit <= previous + 1e-9);
      previous = wc.worst_logit;
      // The recovered model lives in the box and reproduces the optimum.
      for (int l = 0; l < net.num_layers(); ++l) {
        CHECK((wc.model.weight(l) - net.weight(l)).cwiseAbs().maxCoeff() <= delta * (1 + 1e-9));
        CHECK((wc.model.bias(l) - net.bias(l)).cwiseAbs().maxCoeff() <= delta * (1 + 1e-9));
      }
      CHECK(wc.model.forward_logit(x) == doctest::Approx(wc.worst_logit).epsilon(1e-7));
    }
  }
}

TEST_CASE("propagation can be strictly looser than the exact minimum with two hidden layers") {
  // First-layer weights are shared by both second-layer nodes; intervals
  // treat them independently.
  const Network net({Mat::Constant(1, 1, 1.0), (Mat(2, 1) << 1.0, -1.0).finished(), (Mat(1, 2) << 1.0, 1.0).finished()},
                    {Vec::Zero(1), (Vec(2) << 0.0, 2.0).finished(), Vec::Zero(1)});
  const ModelShiftSet shifts(0.1);
  const Vec x = point({1.0});
  const OutputBound b = propagate_bounds(abstract(net, shifts), x);
  const double worst = certify_delta_robust(net, shifts, x).worst_logit;
  CHECK(worst == doctest::Approx(oracle::worst_logit(net, 0.1, x)).epsilon(1e-9));
  CHECK(worst > b.l + 1e-3);
}

TEST_CASE("forward encoding over an input box") {
  milp::Model model;
  const milp::VarId xv = model.add_continuous("x", 0.0, 2.0);
  std::vector<milp::LinearExpr> input(1);
  input[0].add(xv, 1.0);
  const NetworkEncoding enc = encode_network_forward(model, tiny_net(), input, point({0.0}), point({2.0}), "n");
  model.set_objective(milp::LinearExpr().add(enc.output, 1.0), milp::ObjectiveSense::kMinimize);
  const milp::Solution low = milp::solve(model);
  REQUIRE(low.status == milp::SolveStatus::kOptimal);
  CHECK(low.objective_value == doctest::Approx(-1.0));
  CHECK(low.values[xv] == doctest::Approx(0.0));

  // The hidden node has pre-activation bounds [0, 2], so it is never inactive
  // below zero and needs no gate.
  CHECK(enc.status[0][0] == NodeStatus::kActive);
  CHECK(enc.gates[0][0] == -1);
  CHECK(enc.num_gates() == 0);

  milp::Model fixed;
  const milp::VarId xf = fixed.add_continuous("x", 2.0, 2.0);
  std::vector<milp::LinearExpr> in2(1);
  in2[0].add(xf, 1.0);
  const NetworkEncoding e2 = encode_network_forward(fixed, tiny_net(), in2, point({2.0}), point({2.0}), "n");
  fixed.set_objective(milp::LinearExpr().add(e2.output, 1.0), milp::ObjectiveSense::kMaximize);
  CHECK(milp::solve(fixed).objective_value == doctest::Approx(1.0));
}

TEST_CASE("forward encoding reproduces the network on unstable nodes") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const Network net = oracle::random_network(rng, {2, 4, 3, 1});
    const Vec x = Vec::Random(2);
    milp::Model model;
    std::vector<milp::LinearExpr> input(2);
    for (int j = 0; j < 2; ++j) input[j].add(model.add_continuous("x" + std::to_string(j), x(j), x(j)), 1.0);
    const Vec lo = x.array() - 1.0, hi = x.array() + 1.0;
    const NetworkEncoding enc = encode_network_forward(model, net, input, lo, hi, "n");
    for (const auto sense : {milp::ObjectiveSense::kMinimize, milp::ObjectiveSense::kMaximize}) {
      model.set_objective(milp::LinearExpr().add(enc.output, 1.0), sense);
      const milp::Solution s = milp::solve(model);
      REQUIRE(s.status == milp::SolveStatus::kOptimal);
      CHECK(s.objective_value == doctest::Approx(net.forward_logit(x)).epsilon(1e-7));
    }
  }
}
