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

#ifndef HKDRISK_COHORT_SCHEMA_H_
#define HKDRISK_COHORT_SCHEMA_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hkdrisk/common/json_util.h"

namespace hkdrisk {

enum class FeatureKind { kContinuous, kBinary };

std::string_view FeatureKindName(FeatureKind kind);
FeatureKind ParseFeatureKind(std::string_view name);

struct ValidRange {
  double lo = 0.0;
  double hi = 0.0;

  bool Contains(double v) const { return v >= lo && v <= hi; }
  bool operator==(const ValidRange&) const = default;
};

struct FeatureDef {
  std::string name;
  FeatureKind kind = FeatureKind::kContinuous;
  std::string unit;
  // Plausibility bounds in natural units. Binary features always carry [0, 1].
  std::optional<ValidRange> valid_range;

  bool operator==(const FeatureDef&) const = default;
};

// Ordered feature definitions plus the binary label column name. Validated on
// construction: names unique and nonempty, lo < hi, binary ranges [0, 1].
class FeatureSchema {
 public:
  FeatureSchema() = default;
  explicit FeatureSchema(std::vector<FeatureDef> features, std::string label_name = "label");

  const std::vector<FeatureDef>& features() const { return features_; }
  const FeatureDef& feature(std::size_t i) const { return features_.at(i); }
  std::size_t size() const { return features_.size(); }
  const std::string& label_name() const { return label_name_; }
  std::vector<std::string> names() const;

  std::optional<std::size_t> IndexOf(std::string_view name) const;
  // Throws a schema error naming the feature when it is unknown.
  std::size_t RequireIndex(std::string_view name) const;

  // Schema restricted to `names`, in the order given.
  FeatureSchema Subset(const std::vector<std::string>& names) const;
  // Schema without the named feature.
  FeatureSchema Without(std::string_view name) const;

  Json ToJson() const;
  static FeatureSchema FromJson(const Json& json);

  bool operator==(const FeatureSchema&) const = default;

 private:
  std::vector<FeatureDef> features_;
  std::string label_name_ = "label";
};

// The 18-feature hypertensive-kidney-disease ICU schema. Valid ranges are
// physiologic plausibility bounds; they are documentation plus an optional
// ingest-time check, not clinical reference intervals.
FeatureSchema DefaultHkdSchema();

FeatureSchema LoadSchemaFile(const std::filesystem::path& path);

// Lowercase alphanumeric slug usable as a file name ("GCS - Motor Response"
// -> "gcs_motor_response").
std::string FeatureSlug(std::string_view name);

}  // namespace hkdrisk

#endif  // HKDRISK_COHORT_SCHEMA_H_
