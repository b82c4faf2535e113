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

#include "proplace/training.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace proplace {

namespace {

constexpr double kBeta1 = 0.9;
constexpr double kBeta2 = 0.999;
constexpr double kEpsilon = 1e-8;

double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }
double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

struct AdamState {
  std::vector<Mat> mw, vw;
  std::vector<Vec> mb, vb;
  long step = 0;

  explicit AdamState(const std::vector<Mat>& w) {
    for (const auto& m : w) {
      mw.push_back(Mat::Zero(m.rows(), m.cols()));
      vw.push_back(Mat::Zero(m.rows(), m.cols()));
      mb.push_back(Vec::Zero(m.rows()));
      vb.push_back(Vec::Zero(m.rows()));
    }
  }
};

template <typename Param, typename Grad>
void adam_update(Param& p, const Grad& g, Param& m, Param& v, double lr, double c1, double c2) {
  m = kBeta1 * m + (1.0 - kBeta1) * g;
  v = kBeta2 * v + (1.0 - kBeta2) * g.cwiseProduct(g);
  p.array() -= lr * (m.array() / c1) / ((v.array() / c2).sqrt() + kEpsilon);
}

}  // namespace

void TrainConfig::validate() const {
  if (batch_size < 1) throw Error(ErrorCode::kInvalidArgument, "batch_size must be >= 1");
  if (!(learning_rate > 0.0)) throw Error(ErrorCode::kInvalidArgument, "learning_rate must be > 0");
  if (epochs < 0) throw Error(ErrorCode::kInvalidArgument, "epochs must be >= 0");
  if (!(train_fraction > 0.0 && train_fraction <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "train_fraction must lie in (0, 1]");
  }
  for (int h : hidden) {
    if (h < 1) throw Error(ErrorCode::kInvalidArgument, "hidden widths must be >= 1");
  }
}

Network init_network(const std::vector<int>& layer_sizes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Mat> w;
  std::vector<Vec> b;
  for (std::size_t i = 1; i < layer_sizes.size(); ++i) {
    const double bound = std::sqrt(1.0 / layer_sizes[i - 1]);
    std::uniform_real_distribution<double> dist(-bound, bound);
    Mat wi(layer_sizes[i], layer_sizes[i - 1]);
    Vec bi(layer_sizes[i]);
    for (Eigen::Index r = 0; r < wi.rows(); ++r)
      for (Eigen::Index c = 0; c < wi.cols(); ++c) wi(r, c) = dist(rng);
    for (Eigen::Index r = 0; r < bi.size(); ++r) bi(r) = dist(rng);
    w.push_back(std::move(wi));
    b.push_back(std::move(bi));
  }
  return Network(std::move(w), std::move(b));
}

double bce_loss(const Network& net, const Dataset& data) {
  double total = 0.0;
  for (int i = 0; i < data.size(); ++i) {
    const double z = net.forward_logit(data.point(i));
    total += softplus(z) - data.labels(i) * z;
  }
  return data.size() > 0 ? total / data.size() : 0.0;
}

double accuracy(const Network& net, const Dataset& data) {
  int correct = 0;
  for (int i = 0; i < data.size(); ++i) correct += net.predict(data.point(i)) == data.labels(i);
  return data.size() > 0 ? static_cast<double>(correct) / data.size() : 0.0;
}

TrainResult train_with_history(const Dataset& full, const TrainConfig& config) {
  config.validate();
  if (full.size() == 0) throw Error(ErrorCode::kDegenerateData, "cannot train on an empty dataset");
  if (full.count_label(0) == 0 || full.count_label(1) == 0) {
    throw Error(ErrorCode::kDegenerateData, "training data must contain both labels");
  }

  std::mt19937_64 rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
  Dataset data = full;
  if (config.train_fraction < 1.0) {
    std::vector<int> idx(full.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(std::max<std::size_t>(1, static_cast<std::size_t>(config.train_fraction * full.size())));
    std::sort(idx.begin(), idx.end());
    data = full.subset(idx);
  }

  std::vector<int> sizes{data.dim()};
  sizes.insert(sizes.end(), config.hidden.begin(), config.hidden.end());
  sizes.push_back(1);
  Network init = init_network(sizes, config.seed);
  std::vector<Mat> w = init.weights();
  std::vector<Vec> b = init.biases();
  const int layers = static_cast<int>(w.size());

  TrainResult result{init, {bce_loss(init, data)}};
  if (config.epochs == 0) return result;

  AdamState adam(w);
  std::vector<int> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  const Mat x_all = data.rows.transpose();

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (int start = 0; start < data.size(); start += config.batch_size) {
      const int count = std::min(config.batch_size, data.size() - start);
      Mat x(data.dim(), count);
      Eigen::RowVectorXd y(count);
      for (int c = 0; c < count; ++c) {
        x.col(c) = x_all.col(order[start + c]);
        y(c) = data.labels(order[start + c]);
      }

      std::vector<Mat> acts{x};
      for (int l = 0; l < layers; ++l) {
        Mat z = (w[l] * acts.back()).colwise() + b[l];
        if (l + 1 < layers) z = z.cwiseMax(0.0);
        acts.push_back(std::move(z));
      }
      Mat delta = acts.back().unaryExpr([](double z) { return sigmoid(z); });
      delta.row(0) -= y;
      delta /= static_cast<double>(count);

      ++adam.step;
      const double c1 = 1.0 - std::pow(kBeta1, static_cast<double>(adam.step));
      const double c2 = 1.0 - std::pow(kBeta2, static_cast<double>(adam.step));
      for (int l = layers - 1; l >= 0; --l) {
        const Mat gw = delta * acts[l].transpose();
        const Vec gb = delta.rowwise().sum();
        if (l > 0) {
          Mat back = w[l].transpose() * delta;
          delta = back.cwiseProduct((acts[l].array() > 0.0).cast<double>().matrix());
        }
        adam_update(w[l], gw, adam.mw[l], adam.vw[l], config.learning_rate, c1, c2);
        adam_update(b[l], gb, adam.mb[l], adam.vb[l], config.learning_rate, c1, c2);
      }
    }
    result.network = Network(w, b);
    result.losses.push_back(bce_loss(result.network, data));
  }
  return result;
}

Network train(const Dataset& data, const TrainConfig& config) { return train_with_history(data, config).network; }

std::vector<Network> retrain_ensemble(const Dataset& first_half, const Dataset& second_half,
                                      const TrainConfig& config, int n_full, int n_leave_out) {
  if (first_half.size() == 0 || second_half.size() == 0) {
    throw Error(ErrorCode::kDegenerateData, "retraining needs two non-empty halves");
  }
  const Dataset both = Dataset::concat(first_half, second_half);
  std::vector<Network> models;
  int index = 0;
  for (int i = 0; i < n_full; ++i) {
    TrainConfig c = config;
    c.seed = config.seed + static_cast<std::uint64_t>(++index);
    models.push_back(train(both, c));
  }

  std::vector<int> order(first_half.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(config.seed);
  std::shuffle(order.begin(), order.end(), rng);
  const int drop = std::max(1, static_cast<int>(std::lround(0.01 * first_half.size())));
  for (int i = 0; i < n_leave_out; ++i) {
    std::vector<bool> dropped(first_half.size(), false);
    for (int j = 0; j < drop; ++j) dropped[order[(i * drop + j) % first_half.size()]] = true;
    std::vector<int> keep;
    for (int r = 0; r < first_half.size(); ++r)
      if (!dropped[r]) keep.push_back(r);
    TrainConfig c = config;
    c.seed = config.seed + static_cast<std::uint64_t>(++index);
    models.push_back(train(first_half.subset(keep), c));
  }
  return models;
}

}  // namespace proplace
