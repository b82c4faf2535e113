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

#include "proplace/serialization.hpp"

#include <fstream>

namespace proplace {

nlohmann::json vector_to_json(const Vec& v) {
  auto arr = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

Vec vector_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw Error(ErrorCode::kParse, "expected a JSON array of numbers");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw Error(ErrorCode::kParse, "expected a JSON array of numbers");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

nlohmann::json network_to_json(const Network& net) {
  nlohmann::json j;
  j["layer_sizes"] = net.layer_sizes();
  auto weights = nlohmann::json::array();
  auto biases = nlohmann::json::array();
  for (int l = 0; l < net.num_layers(); ++l) {
    auto flat = nlohmann::json::array();
    const Mat& w = net.weight(l);
    for (Eigen::Index r = 0; r < w.rows(); ++r)
      for (Eigen::Index c = 0; c < w.cols(); ++c) flat.push_back(w(r, c));
    weights.push_back(std::move(flat));
    biases.push_back(vector_to_json(net.bias(l)));
  }
  j["weights"] = std::move(weights);
  j["biases"] = std::move(biases);
  return j;
}

Network network_from_json(const nlohmann::json& j) {
  try {
    const auto sizes = j.at("layer_sizes").get<std::vector<int>>();
    const auto& weights = j.at("weights");
    const auto& biases = j.at("biases");
    if (sizes.size() < 2 || weights.size() != sizes.size() - 1 || biases.size() != sizes.size() - 1) {
      throw Error(ErrorCode::kParse, "model JSON layer counts are inconsistent");
    }
    std::vector<Mat> w;
    std::vector<Vec> b;
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
      const int rows = sizes[l + 1], cols = sizes[l];
      const auto flat = weights[l].get<std::vector<double>>();
      if (static_cast<int>(flat.size()) != rows * cols) {
        throw Error(ErrorCode::kParse, "model JSON weight count mismatch in layer " + std::to_string(l));
      }
      Mat m(rows, cols);
      for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m(r, c) = flat[static_cast<std::size_t>(r * cols + c)];
      w.push_back(std::move(m));
      b.push_back(vector_from_json(biases[l]));
    }
    return Network(std::move(w), std::move(b));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed model JSON: ") + e.what());
  }
}

void save_network(const std::string& path, const Network& net) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out << network_to_json(net).dump(2) << '\n';
}

namespace {

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, path + ": " + e.what());
  }
}

}  // namespace

Network load_network(const std::string& path) { return network_from_json(read_json(path)); }

Vec load_point(const std::string& path) {
  const auto j = read_json(path);
  if (j.is_object()) {
    if (!j.contains("x")) throw Error(ErrorCode::kParse, path + ": point object needs an \"x\" array");
    return vector_from_json(j["x"]);
  }
  return vector_from_json(j);
}

}  // namespace proplace
