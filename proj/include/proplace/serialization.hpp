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

#include <string>

#include "proplace/network.hpp"

namespace proplace {

/// {"layer_sizes": [...], "weights": [[row-major per layer]...], "biases": [[...]...]}
nlohmann::json network_to_json(const Network& net);
Network network_from_json(const nlohmann::json& j);

void save_network(const std::string& path, const Network& net);
Network load_network(const std::string& path);

nlohmann::json vector_to_json(const Vec& v);
Vec vector_from_json(const nlohmann::json& j);

/// A point file is either a bare JSON array or {"x": [...]}.
Vec load_point(const std::string& path);

}  // namespace proplace
