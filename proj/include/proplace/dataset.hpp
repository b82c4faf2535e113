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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace proplace {

/// Labelled feature matrix, one row per point.
struct Dataset {
  Eigen::MatrixXd rows;
  Eigen::VectorXi labels;
  std::vector<std::string> feature_names;

  int size() const { return static_cast<int>(rows.rows()); }
  int dim() const { return static_cast<int>(rows.cols()); }
  Eigen::VectorXd point(int i) const { return rows.row(i).transpose(); }
  int count_label(int label) const;

  Dataset subset(const std::vector<int>& indices) const;
  /// Throws kInputShape if the datasets disagree on dimension.
  static Dataset concat(const Dataset& a, const Dataset& b);
};

/// Per-feature min-max scaling onto [0, 1]; constant features map to 0.
struct MinMaxScaler {
  Eigen::VectorXd min;
  Eigen::VectorXd max;

  static MinMaxScaler fit(const Eigen::MatrixXd& rows);
  Eigen::MatrixXd transform(const Eigen::MatrixXd& rows) const;
  Eigen::MatrixXd inverse_transform(const Eigen::MatrixXd& rows) const;
  std::vector<int> constant_features() const;
};

/// Reads a CSV with a header row. The column named "label" holds {0,1}
/// labels; every other column is a numeric feature.
Dataset read_csv(std::istream& in);
Dataset read_csv_file(const std::string& path);
void write_csv(std::ostream& out, const Dataset& data);
void write_csv_file(const std::string& path, const Dataset& data);

/// Halves of a shuffled dataset, with the first half further split into
/// train/test parts.
struct DatasetSplits {
  Dataset first_half;
  Dataset second_half;
  Dataset train;
  Dataset test;
};

DatasetSplits split_dataset(const Dataset& data, std::uint64_t seed, double train_share = 0.8);

}  // namespace proplace
