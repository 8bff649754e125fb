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

#ifndef HKDRISK_COMMON_ERROR_H_
#define HKDRISK_COMMON_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace hkdrisk {

// Error categories surfaced to callers. The service maps these onto the
// `code` field of its JSON error bodies.
enum class ErrorCode {
  kSchema,
  kParse,
  kRange,
  kStratification,
  kCalibration,
  kInvalidArgument,
  kNumeric,
  kDivergence,
  kIntegrity,
  kUnsupportedVersion,
  kNotFound,
  kPipeline,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string field = {})
      : std::runtime_error(message), code_(code), field_(std::move(field)) {}

  ErrorCode code() const { return code_; }
  // Name of the offending input field, empty when not applicable.
  const std::string& field() const { return field_; }

 private:
  ErrorCode code_;
  std::string field_;
};

}  // namespace hkdrisk

#endif  // HKDRISK_COMMON_ERROR_H_
