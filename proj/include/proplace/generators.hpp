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

#include "proplace/dataset.hpp"

namespace proplace {

/// Two Gaussian blobs in 2-D, class 0 around (0.3, 0.3) and class 1
/// around (0.7, 0.7), clipped to [0, 1].
Dataset make_blobs(int n, std::uint64_t seed, double spread = 0.08);

/// Two interleaving half circles with Gaussian noise, min-max scaled to [0, 1].
Dataset make_moons(int n, std::uint64_t seed, double noise = 0.1);

/// Credit-style tabular data: three continuous columns (income, debt ratio,
/// account age) and two binarised categorical columns. Raw, unscaled units.
Dataset make_credit(int n, std::uint64_t seed);

}  // namespace proplace
