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

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "proplace/errors.hpp"

namespace proplace {

/// Fully-connected ReLU network with a single linear output node.
///
/// Layer `i` (0-based) maps the values of layer `i` to layer `i + 1`:
/// hidden layers apply ReLU, the last layer is affine and yields the
/// pre-sigmoid logit. Class 1 is predicted iff the logit is >= 0.
template <typename Scalar>
class ReluNetwork {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  ReluNetwork() = default;

  ReluNetwork(std::vector<Matrix> weights, std::vector<Vector> biases)
      : weights_(std::move(weights)), biases_(std::move(biases)) {
    validate();
  }

  /// Network of the given shape with every parameter set to zero.
  static ReluNetwork zeros(const std::vector<int>& layer_sizes) {
    if (layer_sizes.size() < 2) {
      throw Error(ErrorCode::kInputShape, "a network needs at least input and output layers");
    }
    std::vector<Matrix> w;
    std::vector<Vector> b;
    for (std::size_t i = 1; i < layer_sizes.size(); ++i) {
      if (layer_sizes[i] < 1 || layer_sizes[i - 1] < 1) {
        throw Error(ErrorCode::kInputShape, "layer sizes must be positive");
      }
      w.push_back(Matrix::Zero(layer_sizes[i], layer_sizes[i - 1]));
      b.push_back(Vector::Zero(layer_sizes[i]));
    }
    return ReluNetwork(std::move(w), std::move(b));
  }

  std::vector<int> layer_sizes() const {
    std::vector<int> sizes;
    if (weights_.empty()) return sizes;
    sizes.push_back(static_cast<int>(weights_.front().cols()));
    for (const auto& w : weights_) sizes.push_back(static_cast<int>(w.rows()));
    return sizes;
  }

  int input_dim() const { return weights_.empty() ? 0 : static_cast<int>(weights_.front().cols()); }
  /// Number of affine layers (hidden layers + output).
  int num_layers() const { return static_cast<int>(weights_.size()); }
  int hidden_layers() const { return num_layers() - 1; }
  int hidden_nodes() const {
    int n = 0;
    for (int i = 0; i + 1 < num_layers(); ++i) n += static_cast<int>(weights_[i].rows());
    return n;
  }
  int parameter_count() const {
    int n = 0;
    for (int i = 0; i < num_layers(); ++i) n += static_cast<int>(weights_[i].size() + biases_[i].size());
    return n;
  }

  const Matrix& weight(int layer) const { return weights_.at(layer); }
  const Vector& bias(int layer) const { return biases_.at(layer); }
  const std::vector<Matrix>& weights() const { return weights_; }
  const std::vector<Vector>& biases() const { return biases_; }

  /// Values of every layer for input `x`: element 0 is `x`, hidden layers are
  /// post-ReLU, and the last element holds the logit.
  std::vector<Vector> activations(const Eigen::Ref<const Vector>& x) const {
    check_input(x.size());
    std::vector<Vector> values;
    values.reserve(weights_.size() + 1);
    values.emplace_back(x);
    for (int i = 0; i < num_layers(); ++i) {
      Vector z = weights_[i] * values.back() + biases_[i];
      if (i + 1 < num_layers()) z = z.cwiseMax(Scalar(0));
      values.push_back(std::move(z));
    }
    return values;
  }

  Scalar forward_logit(const Eigen::Ref<const Vector>& x) const {
    check_input(x.size());
    Vector v = x;
    for (int i = 0; i < num_layers(); ++i) {
      Vector z = weights_[i] * v + biases_[i];
      v = (i + 1 < num_layers()) ? Vector(z.cwiseMax(Scalar(0))) : z;
    }
    return v(0);
  }

  int predict(const Eigen::Ref<const Vector>& x) const { return forward_logit(x) >= Scalar(0) ? 1 : 0; }

  template <typename Other>
  ReluNetwork<Other> cast() const {
    std::vector<typename ReluNetwork<Other>::Matrix> w;
    std::vector<typename ReluNetwork<Other>::Vector> b;
    for (int i = 0; i < num_layers(); ++i) {
      w.push_back(weights_[i].template cast<Other>());
      b.push_back(biases_[i].template cast<Other>());
    }
    return ReluNetwork<Other>(std::move(w), std::move(b));
  }

  bool operator==(const ReluNetwork& other) const {
    if (num_layers() != other.num_layers()) return false;
    for (int i = 0; i < num_layers(); ++i) {
      if (weights_[i].rows() != other.weights_[i].rows() ||
          weights_[i].cols() != other.weights_[i].cols() || weights_[i] != other.weights_[i] ||
          biases_[i] != other.biases_[i]) {
        return false;
      }
    }
    return true;
  }

 private:
  void validate() const {
    if (weights_.empty() || weights_.size() != biases_.size()) {
      throw Error(ErrorCode::kInputShape, "weights and biases must be non-empty and of equal count");
    }
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      if (weights_[i].rows() < 1 || weights_[i].cols() < 1) {
        throw Error(ErrorCode::kInputShape, "empty weight matrix in layer " + std::to_string(i));
      }
      if (biases_[i].size() != weights_[i].rows()) {
        throw Error(ErrorCode::kInputShape, "bias size mismatch in layer " + std::to_string(i));
      }
      if (i > 0 && weights_[i].cols() != weights_[i - 1].rows()) {
        throw Error(ErrorCode::kInputShape, "weight shapes do not chain at layer " + std::to_string(i));
      }
      if (!weights_[i].allFinite() || !biases_[i].allFinite()) {
        throw Error(ErrorCode::kInputShape, "non-finite parameter in layer " + std::to_string(i));
      }
    }
    if (weights_.back().rows() != 1) {
      throw Error(ErrorCode::kInputShape, "output layer must have exactly one node");
    }
  }

  void check_input(Eigen::Index n) const {
    if (n != input_dim()) {
      throw Error(ErrorCode::kInputShape, "input has " + std::to_string(n) + " features, network expects " +
                                              std::to_string(input_dim()));
    }
  }

  std::vector<Matrix> weights_;
  std::vector<Vector> biases_;
};

using Network = ReluNetwork<double>;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

template <typename Scalar>
Scalar forward_logit(const ReluNetwork<Scalar>& net,
                     const Eigen::Ref<const typename ReluNetwork<Scalar>::Vector>& x) {
  return net.forward_logit(x);
}

}  // namespace proplace
