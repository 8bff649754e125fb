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

#include "hkdrisk/common/json_util.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "hkdrisk/common/error.h"

namespace hkdrisk {

std::string EncodeDouble(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

double DecodeDouble(const Json& value) {
  if (value.is_number()) return value.get<double>();
  if (!value.is_string()) {
    throw Error(ErrorCode::kParse, "expected a decimal string, got " + value.dump());
  }
  const std::string text = value.get<std::string>();
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  double out = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), out);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw Error(ErrorCode::kParse, "malformed decimal \"" + text + "\"");
  }
  return out;
}

Json WireDouble(double value) {
  if (std::isfinite(value)) return value;
  return EncodeDouble(value);
}

Json EncodeDoubles(const std::vector<double>& values) {
  Json out = Json::array();
  for (double v : values) out.push_back(EncodeDouble(v));
  return out;
}

std::vector<double> DecodeDoubles(const Json& values) {
  if (!values.is_array()) throw Error(ErrorCode::kParse, "expected an array of decimals");
  std::vector<double> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(DecodeDouble(v));
  return out;
}

Json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kNotFound, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParse, path.string() + ": " + e.what());
  }
}

void WriteTextFile(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kNotFound, "cannot write " + path.string());
  out << text;
}

void WriteJsonFile(const std::filesystem::path& path, const Json& value) {
  WriteTextFile(path, value.dump(2) + "\n");
}

const Json& RequireMember(const Json& object, const std::string& key) {
  if (!object.is_object() || !object.contains(key)) {
    throw Error(ErrorCode::kSchema, "missing field \"" + key + "\"", key);
  }
  return object.at(key);
}

}  // namespace hkdrisk
