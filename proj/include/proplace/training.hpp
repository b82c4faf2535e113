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

#include <cstdint>
#include <vector>

#include "proplace/dataset.hpp"
#include "proplace/network.hpp"

namespace proplace {

struct TrainConfig {
  std::vector<int> hidden{16, 16};
  int epochs = 100;
  int batch_size = 32;
  double learning_rate = 1e-2;
  std::uint64_t seed = 0;
  /// Share of the given rows (seeded subsample) used for fitting.
  double train_fraction = 1.0;

  void validate() const;
};

/// Uniform initialisation in [-sqrt(1/fan_in), sqrt(1/fan_in)].
Network init_network(const std::vector<int>& layer_sizes, std::uint64_t seed);

struct TrainResult {
  Network network;
  /// Mean binary cross-entropy over the fitted rows, measured before the
  /// first epoch (element 0) and after every epoch.
  std::vector<double> losses;
};

TrainResult train_with_history(const Dataset& data, const TrainConfig& config);
Network train(const Dataset& data, const TrainConfig& config);

double bce_loss(const Network& net, const Dataset& data);
double accuracy(const Network& net, const Dataset& data);

/// Models simulating retraining: `n_full` fitted on both halves, then
/// `n_leave_out` fitted on 99% of the first half, each dropping a different
/// 1% slice. Model i uses seed `config.seed + i + 1`.
std::vector<Network> retrain_ensemble(const Dataset& first_half, const Dataset& second_half,
                                      const TrainConfig& config, int n_full = 10, int n_leave_out = 10);

}  // namespace proplace
