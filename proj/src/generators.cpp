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

#include "proplace/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace proplace {

Dataset make_blobs(int n, std::uint64_t seed, double spread) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, spread);
  Dataset d;
  d.feature_names = {"x1", "x2"};
  d.rows.resize(n, 2);
  d.labels.resize(n);
  for (int i = 0; i < n; ++i) {
    const int label = i % 2;
    const double c = label ? 0.7 : 0.3;
    d.rows(i, 0) = std::clamp(c + noise(rng), 0.0, 1.0);
    d.rows(i, 1) = std::clamp(c + noise(rng), 0.0, 1.0);
    d.labels(i) = label;
  }
  return d;
}

Dataset make_moons(int n, std::uint64_t seed, double noise) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  std::normal_distribution<double> jitter(0.0, noise);
  Dataset d;
  d.feature_names = {"x1", "x2"};
  d.rows.resize(n, 2);
  d.labels.resize(n);
  for (int i = 0; i < n; ++i) {
    const int label = i % 2;
    const double t = angle(rng);
    double x = label ? 1.0 - std::cos(t) : std::cos(t);
    double y = label ? 0.5 - std::sin(t) : std::sin(t);
    d.rows(i, 0) = x + jitter(rng);
    d.rows(i, 1) = y + jitter(rng);
    d.labels(i) = label;
  }
  d.rows = MinMaxScaler::fit(d.rows).transform(d.rows);
  return d;
}

Dataset make_credit(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::lognormal_distribution<double> income(10.6, 0.45);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Dataset d;
  d.feature_names = {"income", "debt_ratio", "account_age_years", "owns_home", "employed"};
  d.rows.resize(n, 5);
  d.labels.resize(n);
  for (int i = 0; i < n; ++i) {
    const double inc = income(rng);
    const double debt = std::clamp(0.35 + 0.15 * gauss(rng), 0.0, 1.2);
    const double age = std::max(0.0, 6.0 + 4.0 * gauss(rng));
    const double home = unit(rng) < 0.45 ? 1.0 : 0.0;
    const double employed = unit(rng) < 0.8 ? 1.0 : 0.0;
    const double score = 1.8 * (std::log(inc) - 10.6) - 4.0 * (debt - 0.35) + 0.12 * (age - 6.0) + 0.6 * home +
                         1.0 * (employed - 0.8) + 0.5 * gauss(rng);
    d.rows(i, 0) = std::round(inc);
    d.rows(i, 1) = std::round(debt * 1000.0) / 1000.0;
    d.rows(i, 2) = std::round(age * 10.0) / 10.0;
    d.rows(i, 3) = home;
    d.rows(i, 4) = employed;
    d.labels(i) = score > 0.0 ? 1 : 0;
  }
  return d;
}

}  // namespace proplace
