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

#include "proplace/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <random>
#include <sstream>

#include "proplace/errors.hpp"

namespace proplace {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    auto b = cell.find_first_not_of(" \t\r");
    auto e = cell.find_last_not_of(" \t\r");
    cells.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_cell(const std::string& cell, int row, int col) {
  double value = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (cell.empty() || ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw Error(ErrorCode::kParse, "non-numeric cell '" + cell + "' at row " + std::to_string(row) +
                                       ", column " + std::to_string(col));
  }
  return value;
}

}  // namespace

int Dataset::count_label(int label) const { return static_cast<int>((labels.array() == label).count()); }

Dataset Dataset::subset(const std::vector<int>& indices) const {
  Dataset out;
  out.feature_names = feature_names;
  out.rows.resize(static_cast<Eigen::Index>(indices.size()), rows.cols());
  out.labels.resize(static_cast<Eigen::Index>(indices.size()));
  for (std::size_t i = 0; i < indices.size(); ++i) {
    out.rows.row(static_cast<Eigen::Index>(i)) = rows.row(indices[i]);
    out.labels(static_cast<Eigen::Index>(i)) = labels(indices[i]);
  }
  return out;
}

Dataset Dataset::concat(const Dataset& a, const Dataset& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::kInputShape, "cannot concatenate datasets of dimension " + std::to_string(a.dim()) +
                                            " and " + std::to_string(b.dim()));
  }
  Dataset out;
  out.feature_names = a.feature_names.empty() ? b.feature_names : a.feature_names;
  out.rows.resize(a.size() + b.size(), a.dim());
  out.rows << a.rows, b.rows;
  out.labels.resize(a.size() + b.size());
  out.labels << a.labels, b.labels;
  return out;
}

MinMaxScaler MinMaxScaler::fit(const Eigen::MatrixXd& rows) {
  if (rows.rows() == 0) throw Error(ErrorCode::kDegenerateData, "cannot fit a scaler on zero rows");
  return MinMaxScaler{rows.colwise().minCoeff().transpose(), rows.colwise().maxCoeff().transpose()};
}

Eigen::MatrixXd MinMaxScaler::transform(const Eigen::MatrixXd& rows) const {
  Eigen::MatrixXd out(rows.rows(), rows.cols());
  for (Eigen::Index j = 0; j < rows.cols(); ++j) {
    const double range = max(j) - min(j);
    if (range > 0.0) {
      out.col(j) = ((rows.col(j).array() - min(j)) / range).cwiseMax(0.0).cwiseMin(1.0);
    } else {
      out.col(j).setZero();
    }
  }
  return out;
}

Eigen::MatrixXd MinMaxScaler::inverse_transform(const Eigen::MatrixXd& rows) const {
  Eigen::MatrixXd out(rows.rows(), rows.cols());
  for (Eigen::Index j = 0; j < rows.cols(); ++j) {
    out.col(j) = rows.col(j).array() * (max(j) - min(j)) + min(j);
  }
  return out;
}

std::vector<int> MinMaxScaler::constant_features() const {
  std::vector<int> out;
  for (Eigen::Index j = 0; j < min.size(); ++j) {
    if (!(max(j) > min(j))) out.push_back(static_cast<int>(j));
  }
  return out;
}

Dataset read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kParse, "empty CSV input");
  const auto header = split_line(line);
  const auto label_it = std::find(header.begin(), header.end(), "label");
  if (label_it == header.end()) throw Error(ErrorCode::kParse, "CSV header has no 'label' column");
  const int label_col = static_cast<int>(label_it - header.begin());

  Dataset data;
  for (int c = 0; c < static_cast<int>(header.size()); ++c) {
    if (c != label_col) data.feature_names.push_back(header[c]);
  }
  std::vector<std::vector<double>> features;
  std::vector<int> labels;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_line(line);
    if (cells.size() != header.size()) {
      throw Error(ErrorCode::kParse, "row " + std::to_string(row) + " has " + std::to_string(cells.size()) +
                                         " cells, header has " + std::to_string(header.size()));
    }
    std::vector<double> values;
    for (int c = 0; c < static_cast<int>(cells.size()); ++c) {
      const double v = parse_cell(cells[c], row, c + 1);
      if (c == label_col) {
        if (v != 0.0 && v != 1.0) {
          throw Error(ErrorCode::kParse, "label at row " + std::to_string(row) + " must be 0 or 1");
        }
        labels.push_back(static_cast<int>(v));
      } else {
        values.push_back(v);
      }
    }
    features.push_back(std::move(values));
  }
  const auto n = static_cast<Eigen::Index>(features.size());
  const auto d = static_cast<Eigen::Index>(data.feature_names.size());
  data.rows.resize(n, d);
  data.labels.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) data.rows(i, j) = features[i][j];
    data.labels(i) = labels[i];
  }
  return data;
}

Dataset read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return read_csv(in);
}

void write_csv(std::ostream& out, const Dataset& data) {
  for (const auto& name : data.feature_names) out << name << ',';
  out << "label\n";
  out << std::setprecision(17);
  for (int i = 0; i < data.size(); ++i) {
    for (int j = 0; j < data.dim(); ++j) out << data.rows(i, j) << ',';
    out << data.labels(i) << '\n';
  }
}

void write_csv_file(const std::string& path, const Dataset& data) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  write_csv(out, data);
}

DatasetSplits split_dataset(const Dataset& data, std::uint64_t seed, double train_share) {
  if (data.size() < 4) throw Error(ErrorCode::kDegenerateData, "need at least 4 rows to split");
  std::vector<int> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  const int half = data.size() / 2;
  std::vector<int> first(order.begin(), order.begin() + half);
  std::vector<int> second(order.begin() + half, order.end());
  const int n_train = static_cast<int>(std::lround(train_share * half));
  std::vector<int> train(first.begin(), first.begin() + n_train);
  std::vector<int> test(first.begin() + n_train, first.end());

  return DatasetSplits{data.subset(first), data.subset(second), data.subset(train), data.subset(test)};
}

}  // namespace proplace
