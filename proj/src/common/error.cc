/*
 * Copyright 2026 The hkdrisk Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "hkdrisk/common/error.h"

namespace hkdrisk {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSchema: return "schema_error";
    case ErrorCode::kParse: return "parse_error";
    case ErrorCode::kRange: return "range_error";
    case ErrorCode::kStratification: return "stratification_error";
    case ErrorCode::kCalibration: return "calibration_error";
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kNumeric: return "numeric_error";
    case ErrorCode::kDivergence: return "divergence";
    case ErrorCode::kIntegrity: return "integrity_error";
    case ErrorCode::kUnsupportedVersion: return "unsupported_version";
    case ErrorCode::kNotFound: return "not_found";
    case ErrorCode::kPipeline: return "pipeline_error";
  }
  return "unknown";
}

}  // namespace hkdrisk
