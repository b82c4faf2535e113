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

#include "proplace/report.hpp"

#include "proplace/errors.hpp"
#include "proplace/serialization.hpp"

namespace proplace {

using nlohmann::json;

json config_to_json(const RunConfig& c) {
  return {
      {"data", c.data_path},
      {"seed", c.seed},
      {"n_explain", c.n_explain},
      {"threads", c.threads},
      {"lp_dump", c.lp_dump_dir},
      {"train",
       {{"hidden", c.train.hidden},
        {"epochs", c.train.epochs},
        {"batch_size", c.train.batch_size},
        {"learning_rate", c.train.learning_rate}}},
      {"proplace",
       {{"delta", c.proplace.delta},
        {"k", c.proplace.k},
        {"sigma", c.proplace.sigma},
        {"t", c.proplace.t},
        {"max_iters", c.proplace.max_iters},
        {"milp_time_limit_s", c.proplace.milp_time_limit.count()}}},
  };
}

json scaler_to_json(const MinMaxScaler& s) { return {{"min", vector_to_json(s.min)}, {"max", vector_to_json(s.max)}}; }

MinMaxScaler scaler_from_json(const json& j) {
  try {
    MinMaxScaler s;
    s.min = vector_from_json(j.at("min"));
    s.max = vector_from_json(j.at("max"));
    if (s.min.size() != s.max.size()) throw Error(ErrorCode::kParse, "scaler min and max differ in length");
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed scaler: ") + e.what());
  }
}

json ce_result_to_json(const CeResult& r, bool include_cut_models) {
  json trace = json::array();
  for (const IterationRecord& it : r.trace) {
    trace.push_back({{"candidate", vector_to_json(it.candidate)},
                     {"objective", it.objective},
                     {"worst_logit", it.worst_logit}});
  }
  json out = {
      {"x", vector_to_json(r.x)},
      {"x_prime", vector_to_json(r.x_prime)},
      {"iterations", r.iterations},
      {"objective", r.objective},
      {"certified", r.certified},
      {"worst_logit", r.certified_worst_logit},
      {"sigma_used", r.sigma_used},
      {"t_used", r.t_used},
      {"neighbour_ids", r.neighbour_ids},
      {"trace", trace},
  };
  if (include_cut_models) {
    json cuts = json::array();
    for (const Network& m : r.cut_models) cuts.push_back(network_to_json(m));
    out["cut_models"] = cuts;
  }
  return out;
}

json metrics_to_json(const MetricsReport& m) {
  json per = json::array();
  for (const InstanceMetrics& i : m.per_instance) {
    per.push_back({{"index", i.index},
                   {"l1", i.l1},
                   {"lof", i.lof},
                   {"valid_models", i.valid_models},
                   {"total_models", i.total_models},
                   {"delta_robust", i.delta_robust},
                   {"worst_logit", i.worst_logit}});
  }
  return {{"n", m.per_instance.size()},
          {"l1_mean", m.l1_mean},
          {"lof_mean", m.lof_mean},
          {"vr_percent", m.vr_percent},
          {"v_delta_percent", m.v_delta_percent},
          {"per_instance", per}};
}

json experiment_to_json(const ExperimentResult& r) {
  json instances = json::array();
  std::size_t scored = 0;
  for (const InstanceOutcome& o : r.instances) {
    json rec = {{"source", o.source}, {"row", o.row}, {"x", vector_to_json(o.x)}};
    if (o.result) {
      rec["status"] = o.result->certified ? "certified" : "uncertified";
      rec["result"] = ce_result_to_json(*o.result);
      const InstanceMetrics& m = r.metrics.per_instance.at(scored++);
      rec["l1"] = m.l1;
      rec["lof"] = m.lof;
      rec["valid_models"] = m.valid_models;
    } else {
      rec["status"] = "failed";
      rec["error"] = o.error;
      rec["message"] = o.message;
    }
    instances.push_back(rec);
  }
  json metrics = metrics_to_json(r.metrics);
  metrics.erase("per_instance");
  return {
      {"config", config_to_json(r.config)},
      {"model",
       {{"layer_sizes", r.model.layer_sizes()},
        {"train_accuracy", r.train_accuracy},
        {"test_accuracy", r.test_accuracy},
        {"retrained_models", r.retrained.size()}}},
      {"requested", r.config.n_explain},
      {"available", r.available},
      {"shortfall", std::max(0, r.config.n_explain - r.available)},
      {"metrics", metrics},
      {"instances", instances},
  };
}

json traces_to_json(const ExperimentResult& r) {
  json out = json::array();
  for (std::size_t i = 0; i < r.instances.size(); ++i) {
    const InstanceOutcome& o = r.instances[i];
    json rec = {{"instance", i}};
    if (o.result) {
      rec.update(ce_result_to_json(*o.result, true));
    } else {
      rec["error"] = o.error;
    }
    out.push_back(rec);
  }
  return out;
}

}  // namespace proplace
