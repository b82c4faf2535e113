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

#include <json.hpp>

#include "proplace/dataset.hpp"
#include "proplace/eval.hpp"
#include "proplace/experiment.hpp"
#include "proplace/proplace.hpp"

namespace proplace {

nlohmann::json config_to_json(const RunConfig& config);
nlohmann::json scaler_to_json(const MinMaxScaler& scaler);
MinMaxScaler scaler_from_json(const nlohmann::json& j);

/// Result summary; cut models are included only when asked.
nlohmann::json ce_result_to_json(const CeResult& result, bool include_cut_models = false);
nlohmann::json metrics_to_json(const MetricsReport& report);

/// Self-describing report: echoed config, model quality, metrics and one
/// record per explained input. Contains no timings, so reruns are identical.
nlohmann::json experiment_to_json(const ExperimentResult& result);
/// Per-input iteration traces with every cut model.
nlohmann::json traces_to_json(const ExperimentResult& result);

}  // namespace proplace
