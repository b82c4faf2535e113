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

#include "proplace/errors.hpp"

namespace proplace {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInputShape: return "InputShapeError";
    case ErrorCode::kDegenerateData: return "DegenerateDataError";
    case ErrorCode::kInvalidShift: return "InvalidShiftError";
    case ErrorCode::kInternalConsistency: return "InternalConsistencyError";
    case ErrorCode::kCertificationInconclusive: return "CertificationInconclusive";
    case ErrorCode::kNoCandidates: return "NoCandidatesError";
    case ErrorCode::kInsufficientRobustNeighbours: return "InsufficientRobustNeighbours";
    case ErrorCode::kNoFeasibleCe: return "NoFeasibleCE";
    case ErrorCode::kNonConvergence: return "NonConvergence";
    case ErrorCode::kEncoding: return "EncodingError";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kInsufficientReference: return "InsufficientReferenceError";
    case ErrorCode::kNumeric: return "NumericError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "IoError";
  }
  return "UnknownError";
}

}  // namespace proplace
