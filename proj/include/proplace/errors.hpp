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

#include <stdexcept>
#include <string>
#include <string_view>

namespace proplace {

enum class ErrorCode {
  kInputShape,
  kDegenerateData,
  kInvalidShift,
  kInternalConsistency,
  kCertificationInconclusive,
  kNoCandidates,
  kInsufficientRobustNeighbours,
  kNoFeasibleCe,
  kNonConvergence,
  kEncoding,
  kParse,
  kInsufficientReference,
  kNumeric,
  kInvalidArgument,
  kIo,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InsufficientRobustNeighboursError : public Error {
 public:
  InsufficientRobustNeighboursError(int found, int requested)
      : Error(ErrorCode::kInsufficientRobustNeighbours,
              "only " + std::to_string(found) + " delta-robust neighbours found, " +
                  std::to_string(requested) + " requested"),
        found_(found),
        requested_(requested) {}

  int found() const noexcept { return found_; }
  int requested() const noexcept { return requested_; }

 private:
  int found_;
  int requested_;
};

}  // namespace proplace
