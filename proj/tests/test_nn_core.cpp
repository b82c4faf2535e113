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

#include <cmath>
#include <random>
#include <sstream>

#include "proplace/dataset.hpp"
#include "proplace/generators.hpp"
#include "proplace/network.hpp"
#include "proplace/serialization.hpp"
#include "proplace/training.hpp"

using namespace proplace;

namespace {

Network tiny_net() {
  return Network({Mat::Constant(1, 1, 1.0), Mat::Constant(1, 1, 1.0)}, {Vec::Constant(1, 0.0), Vec::Constant(1, -1.0)});
}

Network random_net(std::mt19937_64& rng, const std::vector<int>& sizes) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Mat> w;
  std::vector<Vec> b;
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    Mat m(sizes[i], sizes[i - 1]);
    Vec v(sizes[i]);
    for (Eigen::Index k = 0; k < m.size(); ++k) m.data()[k] = g(rng);
    for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = g(rng);
    w.push_back(m);
    b.push_back(v);
  }
  return Network(w, b);
}

// Test-only logistic regression fitted by full-batch gradient descent.
double logistic_regression_accuracy(const Dataset& d) {
  Vec w = Vec::Zero(d.dim());
  double b = 0.0;
  for (int it = 0; it < 3000; ++it) {
    Vec gw = Vec::Zero(d.dim());
    double gb = 0.0;
    for (int i = 0; i < d.size(); ++i) {
      const double p = 1.0 / (1.0 + std::exp(-(w.dot(d.point(i)) + b)));
      gw += (p - d.labels(i)) * d.point(i);
      gb += p - d.labels(i);
    }
    w -= 0.5 * gw / d.size();
    b -= 0.5 * gb / d.size();
  }
  int correct = 0;
  for (int i = 0; i < d.size(); ++i) correct += ((w.dot(d.point(i)) + b) >= 0) == (d.labels(i) == 1);
  return static_cast<double>(correct) / d.size();
}

}  // namespace

TEST_CASE("forward_logit on the 1-1-1 network") {
  const Network net = tiny_net();
  CHECK(forward_logit(net, Vec::Constant(1, 2.0)) == doctest::Approx(1.0));
  CHECK(net.predict(Vec::Constant(1, 2.0)) == 1);
  CHECK(net.forward_logit(Vec::Constant(1, 0.5)) == doctest::Approx(-0.5));
  CHECK(net.predict(Vec::Constant(1, 0.5)) == 0);
  CHECK(net.forward_logit(Vec::Constant(1, -3.0)) == doctest::Approx(-1.0));
}

TEST_CASE("shape errors") {
  const Network net = tiny_net();
  try {
    net.forward_logit(Vec::Zero(2));
    FAIL("expected an input-shape error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInputShape);
  }
  CHECK_THROWS_AS(Network({Mat::Zero(2, 1)}, {Vec::Zero(2)}), Error);
  CHECK_THROWS_AS(Network({Mat::Zero(3, 2), Mat::Zero(1, 2)}, {Vec::Zero(3), Vec::Zero(1)}), Error);
  CHECK_THROWS_AS(Network({Mat::Constant(1, 1, NAN)}, {Vec::Zero(1)}), Error);
}

TEST_CASE("forward_logit is continuous with the layer-norm Lipschitz bound") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Network net = random_net(rng, {3, 5, 4, 1});
    double lipschitz = 1.0;
    for (const auto& w : net.weights()) lipschitz *= w.cwiseAbs().rowwise().sum().maxCoeff();
    Vec x(3), v(3);
    for (int k = 0; k < 3; ++k) { x(k) = u(rng); v(k) = u(rng); }
    const double dt = 1e-3;
    double prev = net.forward_logit(x);
    for (int s = 1; s <= 2000; ++s) {
      const double cur = net.forward_logit(x + s * dt * v);
      CHECK(std::abs(cur - prev) <= lipschitz * dt * v.cwiseAbs().maxCoeff() + 1e-12);
      prev = cur;
    }
  }
}

TEST_CASE("permuting hidden nodes leaves the logit unchanged") {
  std::mt19937_64 rng(12);
  const Network net = random_net(rng, {2, 4, 3, 1});
  Eigen::PermutationMatrix<Eigen::Dynamic> p1(4), p2(3);
  p1.indices() << 2, 0, 3, 1;
  p2.indices() << 1, 2, 0;
  const Network permuted({p1 * net.weight(0), p2 * net.weight(1) * p1.transpose(), net.weight(2) * p2.transpose()},
                         {p1 * net.bias(0), p2 * net.bias(1), net.bias(2)});
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const Vec x = Vec::NullaryExpr(2, [&] { return u(rng); });
    CHECK(permuted.forward_logit(x) == doctest::Approx(net.forward_logit(x)).epsilon(1e-12));
  }
}

TEST_CASE("training separable blobs reaches the logistic-regression level") {
  const Dataset data = make_blobs(200, 4);
  const double oracle = logistic_regression_accuracy(data);
  REQUIRE(oracle >= 0.95);
  TrainConfig cfg;
  cfg.hidden = {8, 8};
  cfg.epochs = 50;
  cfg.seed = 1;
  const TrainResult res = train_with_history(data, cfg);
  CHECK(accuracy(res.network, data) >= 0.95);
  CHECK(res.losses.back() <= res.losses.front());
  for (const auto& w : res.network.weights()) CHECK(w.allFinite());
}

TEST_CASE("zero epochs returns the seeded initial network") {
  const Dataset data = make_blobs(40, 2);
  TrainConfig cfg;
  cfg.hidden = {3};
  cfg.epochs = 0;
  cfg.seed = 99;
  CHECK(train(data, cfg) == init_network({2, 3, 1}, 99));
  const Network init = init_network({4, 3, 1}, 5);
  for (const auto& w : init.weights()) {
    CHECK(w.cwiseAbs().maxCoeff() <= std::sqrt(1.0 / w.cols()));
  }
}

TEST_CASE("training is deterministic given the seed") {
  const Dataset data = make_moons(120, 3);
  TrainConfig cfg;
  cfg.hidden = {6, 6};
  cfg.epochs = 10;
  cfg.seed = 17;
  CHECK(train(data, cfg) == train(data, cfg));
  cfg.train_fraction = 0.5;
  CHECK(train(data, cfg) == train(data, cfg));
}

TEST_CASE("single-class data is rejected") {
  Dataset data = make_blobs(20, 1);
  data.labels.setZero();
  try {
    train(data, TrainConfig{});
    FAIL("expected degenerate-data error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDegenerateData);
  }
  TrainConfig bad;
  bad.batch_size = 0;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = TrainConfig{};
  bad.learning_rate = 0.0;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("retraining ensemble protocol") {
  const Dataset data = make_blobs(160, 8);
  const auto splits = split_dataset(data, 3);
  TrainConfig cfg;
  cfg.hidden = {4};
  cfg.epochs = 3;
  cfg.seed = 5;
  const auto models = retrain_ensemble(splits.first_half, splits.second_half, cfg);
  CHECK(models.size() == 20);
  const auto again = retrain_ensemble(splits.first_half, splits.second_half, cfg);
  for (std::size_t i = 0; i < models.size(); ++i) CHECK(models[i] == again[i]);
  CHECK(!(models[0] == models[1]));
  CHECK(retrain_ensemble(splits.first_half, splits.second_half, cfg, 1, 1).size() == 2);

  Dataset wrong = splits.second_half;
  wrong.rows = Mat::Zero(wrong.size(), 3);
  try {
    retrain_ensemble(splits.first_half, wrong, cfg);
    FAIL("expected input-shape error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInputShape);
  }
}

TEST_CASE("model JSON round trip is bit-exact") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const Network net = random_net(rng, {3, 7, 2, 1});
    const std::string text = network_to_json(net).dump();
    const Network back = network_from_json(nlohmann::json::parse(text));
    CHECK(back == net);
  }
  CHECK_THROWS_AS(network_from_json(nlohmann::json::parse(R"({"layer_sizes":[1,1],"weights":[[1,2]],"biases":[[0]]})")),
                  Error);
}

TEST_CASE("CSV ingestion, scaling and splitting") {
  std::istringstream ok("a,label,b\n5,1,2\n15,0,2\n10,1,2\n");
  const Dataset d = read_csv(ok);
  CHECK(d.size() == 3);
  CHECK(d.feature_names == std::vector<std::string>{"a", "b"});
  const auto scaler = MinMaxScaler::fit(d.rows);
  const Mat scaled = scaler.transform(d.rows);
  CHECK(scaled(2, 0) == doctest::Approx(0.5));
  CHECK(scaled(0, 1) == 0.0);
  CHECK(scaler.constant_features() == std::vector<int>{1});
  CHECK(scaler.inverse_transform(scaled)(2, 0) == doctest::Approx(10.0));

  std::istringstream no_label("a,b\n1,2\n");
  CHECK_THROWS_AS(read_csv(no_label), Error);
  std::istringstream bad_cell("a,label\n1,0\nx,1\n");
  try {
    read_csv(bad_cell);
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParse);
    CHECK(std::string(e.what()).find("row 3") != std::string::npos);
    CHECK(std::string(e.what()).find("column 1") != std::string::npos);
  }

  const auto splits = split_dataset(make_blobs(100, 1), 42);
  CHECK(splits.first_half.size() == 50);
  CHECK(splits.second_half.size() == 50);
  CHECK(splits.train.size() == 40);
  CHECK(splits.test.size() == 10);
}
