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

#include "hkdrisk/cohort/schema.h"

#include <cctype>
#include <set>

#include "hkdrisk/common/error.h"

namespace hkdrisk {

std::string_view FeatureKindName(FeatureKind kind) {
  return kind == FeatureKind::kBinary ? "binary" : "continuous";
}

FeatureKind ParseFeatureKind(std::string_view name) {
  if (name == "binary") return FeatureKind::kBinary;
  if (name == "continuous") return FeatureKind::kContinuous;
  throw Error(ErrorCode::kSchema, "unknown feature kind \"" + std::string(name) + "\"");
}

FeatureSchema::FeatureSchema(std::vector<FeatureDef> features, std::string label_name)
    : features_(std::move(features)), label_name_(std::move(label_name)) {
  if (label_name_.empty()) throw Error(ErrorCode::kSchema, "label column name is empty");
  std::set<std::string> seen;
  for (auto& f : features_) {
    if (f.name.empty()) throw Error(ErrorCode::kSchema, "feature with empty name");
    if (f.name == label_name_) {
      throw Error(ErrorCode::kSchema, "feature name collides with label column", f.name);
    }
    if (!seen.insert(f.name).second) {
      throw Error(ErrorCode::kSchema, "duplicate feature \"" + f.name + "\"", f.name);
    }
    if (f.kind == FeatureKind::kBinary) {
      if (f.valid_range && !(*f.valid_range == ValidRange{0.0, 1.0})) {
        throw Error(ErrorCode::kSchema, "binary feature must have range [0, 1]", f.name);
      }
      f.valid_range = ValidRange{0.0, 1.0};
    } else if (f.valid_range && !(f.valid_range->lo < f.valid_range->hi)) {
      throw Error(ErrorCode::kSchema, "valid range requires lo < hi", f.name);
    }
  }
}

std::vector<std::string> FeatureSchema::names() const {
  std::vector<std::string> out;
  out.reserve(features_.size());
  for (const auto& f : features_) out.push_back(f.name);
  return out;
}

std::optional<std::size_t> FeatureSchema::IndexOf(std::string_view name) const {
  for (std::size_t i = 0; i < features_.size(); ++i) {
    if (features_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t FeatureSchema::RequireIndex(std::string_view name) const {
  auto idx = IndexOf(name);
  if (!idx) {
    throw Error(ErrorCode::kSchema, "unknown feature \"" + std::string(name) + "\"",
                std::string(name));
  }
  return *idx;
}

FeatureSchema FeatureSchema::Subset(const std::vector<std::string>& names) const {
  std::vector<FeatureDef> out;
  out.reserve(names.size());
  for (const auto& n : names) out.push_back(features_[RequireIndex(n)]);
  return FeatureSchema(std::move(out), label_name_);
}

FeatureSchema FeatureSchema::Without(std::string_view name) const {
  RequireIndex(name);
  std::vector<FeatureDef> out;
  for (const auto& f : features_) {
    if (f.name != name) out.push_back(f);
  }
  return FeatureSchema(std::move(out), label_name_);
}

Json FeatureSchema::ToJson() const {
  Json features = Json::array();
  for (const auto& f : features_) {
    Json item = {{"name", f.name}, {"kind", FeatureKindName(f.kind)}, {"unit", f.unit}};
    if (f.valid_range) {
      item["valid_range"] = Json::array({f.valid_range->lo, f.valid_range->hi});
    }
    features.push_back(std::move(item));
  }
  return Json{{"label", label_name_}, {"features", std::move(features)}};
}

FeatureSchema FeatureSchema::FromJson(const Json& json) {
  std::vector<FeatureDef> features;
  for (const auto& item : RequireMember(json, "features")) {
    FeatureDef f;
    f.name = RequireMember(item, "name").get<std::string>();
    f.kind = ParseFeatureKind(RequireMember(item, "kind").get<std::string>());
    f.unit = item.value("unit", "");
    if (item.contains("valid_range") && !item["valid_range"].is_null()) {
      const auto& r = item["valid_range"];
      if (!r.is_array() || r.size() != 2) {
        throw Error(ErrorCode::kSchema, "valid_range must be [lo, hi]", f.name);
      }
      f.valid_range = ValidRange{DecodeDouble(r[0]), DecodeDouble(r[1])};
    }
    features.push_back(std::move(f));
  }
  return FeatureSchema(std::move(features), json.value("label", "label"));
}

FeatureSchema DefaultHkdSchema() {
  using K = FeatureKind;
  return FeatureSchema({
      {"Richmond-RAS Scale", K::kContinuous, "--", ValidRange{-5.0, 4.0}},
      {"Lactate", K::kContinuous, "mmol/L", ValidRange{0.0, 30.0}},
      {"PTT", K::kContinuous, "sec", ValidRange{10.0, 150.0}},
      {"GCS - Motor Response", K::kContinuous, "score", ValidRange{1.0, 6.0}},
      {"Anion gap", K::kContinuous, "mmol/L", ValidRange{0.0, 60.0}},
      {"Phosphorous", K::kContinuous, "mg/dL", ValidRange{0.0, 20.0}},
      {"pO2", K::kContinuous, "mmHg", ValidRange{10.0, 700.0}},
      {"Respiratory Rate", K::kContinuous, "breaths/min", ValidRange{0.0, 70.0}},
      {"Bicarbonate", K::kContinuous, "mmol/L", ValidRange{2.0, 60.0}},
      {"APSIII", K::kContinuous, "score", ValidRange{0.0, 299.0}},
      {"Non-Invasive BP Systolic", K::kContinuous, "mmHg", ValidRange{30.0, 260.0}},
      {"ED duration", K::kContinuous, "hours", ValidRange{0.0, 168.0}},
      {"HR Alarm - Low", K::kContinuous, "bpm", ValidRange{20.0, 120.0}},
      {"Norepinephrine", K::kBinary, "binary", std::nullopt},
      {"Oxycodone (IR)", K::kBinary, "binary", std::nullopt},
      {"Severe Sepsis with Shock", K::kBinary, "binary", std::nullopt},
      {"Cerebral Edema", K::kBinary, "binary", std::nullopt},
      {"Multi Lumen", K::kBinary, "binary", std::nullopt},
  });
}

FeatureSchema LoadSchemaFile(const std::filesystem::path& path) {
  return FeatureSchema::FromJson(ReadJsonFile(path));
}

std::string FeatureSlug(std::string_view name) {
  std::string out;
  bool pending_sep = false;
  for (char c : name) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      if (pending_sep && !out.empty()) out.push_back('_');
      pending_sep = false;
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else {
      pending_sep = true;
    }
  }
  return out.empty() ? "feature" : out;
}

}  // namespace hkdrisk
