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

#ifndef HKDRISK_COMMON_JSON_UTIL_H_
#define HKDRISK_COMMON_JSON_UTIL_H_

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace hkdrisk {

using Json = nlohmann::json;

// Doubles travel as shortest round-trip decimal strings so that a value read
// back from disk is bit-identical to the one written. Non-finite values use
// "nan", "inf" and "-inf".
std::string EncodeDouble(double value);
double DecodeDouble(const Json& value);

// Plain JSON number for finite values (wire responses); non-finite values fall
// back to EncodeDouble.
Json WireDouble(double value);

Json EncodeDoubles(const std::vector<double>& values);
std::vector<double> DecodeDoubles(const Json& values);

Json ReadJsonFile(const std::filesystem::path& path);
void WriteJsonFile(const std::filesystem::path& path, const Json& value);
void WriteTextFile(const std::filesystem::path& path, const std::string& text);

// Fetches a required member, raising a schema error naming `key` otherwise.
const Json& RequireMember(const Json& object, const std::string& key);

}  // namespace hkdrisk

#endif  // HKDRISK_COMMON_JSON_UTIL_H_
