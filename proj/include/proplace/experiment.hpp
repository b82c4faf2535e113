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
#include <optional>
#include <string>
#include <vector>

#include "proplace/dataset.hpp"
#include "proplace/eval.hpp"
#include "proplace/network.hpp"
#include "proplace/proplace.hpp"
#include "proplace/training.hpp"

namespace proplace {

struct RunConfig {
  std::string data_path;
  TrainConfig train{{8, 8}};
  ProplaceConfig proplace;
  int n_explain = 50;
  std::uint64_t seed = 0;
  /// Worker threads for per-input generation.
  int threads = 1;
  /// When set, every MILP built during generation is written here as an LP file.
  std::string lp_dump_dir;

  void validate() const;
};

/// Scaled data and its splits. The scaler is fitted on the whole file.
struct PreparedData {
  MinMaxScaler scaler;
  DatasetSplits splits;
  std::vector<int> constant_features;
};

PreparedData prepare(const Dataset& raw, std::uint64_t seed);

struct InstanceOutcome {
  /// "test" or "second_half", and the row within that split.
  std::string source;
  int row = 0;
  Vec x;
  std::optional<CeResult> result;
  std::string error;  // error kind name when generation failed
  std::string message;
};

struct ExperimentResult {
  RunConfig config;
  Network model;
  double train_accuracy = 0.0;
  double test_accuracy = 0.0;
  std::vector<Network> retrained;
  /// Class-0 inputs found; less than n_explain means a shortfall.
  int available = 0;
  std::vector<InstanceOutcome> instances;
  /// Metrics over the instances that produced a counterfactual.
  MetricsReport metrics;
};

/// Explanation candidates: class-0 predictions from the test split, then
/// from the second half, in split order.
std::vector<std::pair<std::string, int>> explain_pool(const DatasetSplits& splits, const Network& net);

/// Trains, builds the retrained ensemble, explains up to n_explain inputs
/// and scores the results. Per-input failures are recorded, not thrown.
ExperimentResult run_experiment(const PreparedData& data, const RunConfig& config);

/// True when every instance produced a certified CE or reported that no
/// robust neighbourhood or feasible CE exists.
bool all_instances_resolved(const ExperimentResult& result);

}  // namespace proplace
