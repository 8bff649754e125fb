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

#ifndef HKDRISK_MODELS_BUNDLE_H_
#define HKDRISK_MODELS_BUNDLE_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hkdrisk/cohort/group_stats.h"
#include "hkdrisk/cohort/schema.h"
#include "hkdrisk/models/fitted_pipeline.h"

namespace hkdrisk {

inline constexpr int kBundleFormatVersion = 1;

struct BundleMetadata {
  std::uint64_t seed = 0;
  std::string created;    // caller-supplied date string; never the wall clock
  std::string data_hash;  // lineage of the training cohort
  Json extra = Json::object();
};

// Everything needed to score a raw patient row: input schema, selected
// features, fitted plans and model, decision threshold. Immutable once sealed.
class ModelBundle {
 public:
  // Throws kIntegrity when the plans and the model were not fitted on the same
  // training data, or when the selected features are not in `schema`.
  static ModelBundle Seal(FittedPipeline pipeline, FeatureSchema schema, double threshold,
                          BundleMetadata metadata, std::optional<GroupStats> group_stats = {});

  const FittedPipeline& pipeline() const { return pipeline_; }
  const FeatureSchema& schema() const { return schema_; }
  std::vector<std::string> selected_features() const { return pipeline_.features(); }
  double threshold() const { return threshold_; }
  const BundleMetadata& metadata() const { return metadata_; }
  const std::optional<GroupStats>& group_stats() const { return group_stats_; }
  // SHA-256 of the serialized payload.
  const std::string& hash() const { return hash_; }

  // Risk for a natural-unit row over selected_features() (NaN = missing).
  double PredictProba(std::span<const double> natural) const { return pipeline_.PredictProba(natural); }

  Json PayloadJson() const;
  Json ToJson() const;
  void Save(const std::filesystem::path& path) const;

  // Throws kUnsupportedVersion, kIntegrity (hash mismatch) or kSchema (a
  // missing component, named in the error's field).
  static ModelBundle FromJson(const Json& json);
  static ModelBundle Load(const std::filesystem::path& path);

 private:
  ModelBundle(FittedPipeline pipeline, FeatureSchema schema, double threshold, BundleMetadata metadata,
              std::optional<GroupStats> group_stats);

  FittedPipeline pipeline_;
  FeatureSchema schema_;
  double threshold_;
  BundleMetadata metadata_;
  std::optional<GroupStats> group_stats_;
  std::string hash_;
};

}  // namespace hkdrisk

#endif  // HKDRISK_MODELS_BUNDLE_H_
