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

#include "proplace/experiment.hpp"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

#include "proplace/errors.hpp"
#include "proplace/milp.hpp"

namespace proplace {

namespace {

// Identifies the input a worker is explaining, for LP dump file names.
thread_local int tl_instance = -1;
thread_local int tl_model_count = 0;

ModelObserver lp_dump_observer(const std::string& dir) {
  if (dir.empty()) return {};
  std::filesystem::create_directories(dir);
  return [dir](const milp::Model& model, const std::string& tag) {
    char name[64];
    std::snprintf(name, sizeof name, "inst%03d_%03d_%s.lp", tl_instance, tl_model_count++, tag.c_str());
    std::ofstream out(std::filesystem::path(dir) / name);
    if (!out) throw Error(ErrorCode::kIo, "cannot write LP dump " + std::string(name));
    out << milp::export_lp(model);
  };
}

bool resolved(const InstanceOutcome& o) {
  if (o.result) return o.result->certified;
  return o.error == error_code_name(ErrorCode::kInsufficientRobustNeighbours) ||
         o.error == error_code_name(ErrorCode::kNoFeasibleCe);
}

}  // namespace

void RunConfig::validate() const {
  if (n_explain < 1) throw Error(ErrorCode::kInvalidArgument, "n_explain must be at least 1");
  if (threads < 1) throw Error(ErrorCode::kInvalidArgument, "threads must be at least 1");
  train.validate();
  proplace.validate();
}

PreparedData prepare(const Dataset& raw, std::uint64_t seed) {
  PreparedData out;
  out.scaler = MinMaxScaler::fit(raw.rows);
  out.constant_features = out.scaler.constant_features();
  Dataset scaled = raw;
  scaled.rows = out.scaler.transform(raw.rows);
  out.splits = split_dataset(scaled, seed);
  return out;
}

std::vector<std::pair<std::string, int>> explain_pool(const DatasetSplits& splits, const Network& net) {
  std::vector<std::pair<std::string, int>> pool;
  for (int i = 0; i < splits.test.size(); ++i) {
    if (net.predict(splits.test.point(i)) == 0) pool.emplace_back("test", i);
  }
  for (int i = 0; i < splits.second_half.size(); ++i) {
    if (net.predict(splits.second_half.point(i)) == 0) pool.emplace_back("second_half", i);
  }
  return pool;
}

ExperimentResult run_experiment(const PreparedData& data, const RunConfig& config) {
  config.validate();
  const DatasetSplits& splits = data.splits;
  ExperimentResult out;
  out.config = config;

  TrainConfig tc = config.train;
  tc.seed = config.seed;
  out.model = train(splits.train, tc);
  out.train_accuracy = accuracy(out.model, splits.train);
  out.test_accuracy = splits.test.size() > 0 ? accuracy(out.model, splits.test) : 0.0;
  out.retrained = retrain_ensemble(splits.first_half, splits.second_half, tc);

  const auto pool = explain_pool(splits, out.model);
  out.available = static_cast<int>(pool.size());
  const int n = std::min(config.n_explain, out.available);
  out.instances.resize(n);
  for (int i = 0; i < n; ++i) {
    out.instances[i].source = pool[i].first;
    out.instances[i].row = pool[i].second;
    const Dataset& from = pool[i].first == "test" ? splits.test : splits.second_half;
    out.instances[i].x = from.point(pool[i].second);
  }

  const Explainer explainer(out.model, splits.train, config.proplace, lp_dump_observer(config.lp_dump_dir));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < n; i = next++) {
      tl_instance = i;
      tl_model_count = 0;
      InstanceOutcome& o = out.instances[i];
      try {
        o.result = explainer.explain(o.x);
      } catch (const Error& e) {
        o.error = std::string(error_code_name(e.code()));
        o.message = e.what();
      }
    }
  };
  const int threads = std::min(config.threads, std::max(n, 1));
  std::vector<std::thread> pool_threads;
  for (int t = 1; t < threads; ++t) pool_threads.emplace_back(worker);
  worker();
  for (auto& t : pool_threads) t.join();

  std::vector<Vec> inputs, ces;
  for (const InstanceOutcome& o : out.instances) {
    if (!o.result) continue;
    inputs.push_back(o.x);
    ces.push_back(o.result->x_prime);
  }
  std::vector<int> desired;
  for (int i = 0; i < splits.train.size(); ++i) {
    if (splits.train.labels(i) == 1) desired.push_back(i);
  }
  const Lof lof(splits.train.subset(desired).rows);
  out.metrics = evaluate(inputs, ces, out.model, ModelShiftSet(config.proplace.delta), out.retrained, lof);
  return out;
}

bool all_instances_resolved(const ExperimentResult& result) {
  for (const InstanceOutcome& o : result.instances) {
    if (!resolved(o)) return false;
  }
  return true;
}

}  // namespace proplace
