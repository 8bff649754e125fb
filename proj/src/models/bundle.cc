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

#include "hkdrisk/models/bundle.h"

#include <cmath>
#include <fstream>

#include "hkdrisk/common/error.h"
#include "hkdrisk/common/hash.h"

namespace hkdrisk {
namespace {

const Json& Component(const Json& payload, const std::string& key) {
  if (!payload.contains(key) || payload.at(key).is_null()) {
    throw Error(ErrorCode::kSchema, "bundle is missing its " + key, key);
  }
  return payload.at(key);
}

}  // namespace

ModelBundle::ModelBundle(FittedPipeline pipeline, FeatureSchema schema, double threshold,
                         BundleMetadata metadata, std::optional<GroupStats> group_stats)
    : pipeline_(std::move(pipeline)),
      schema_(std::move(schema)),
      threshold_(threshold),
      metadata_(std::move(metadata)),
      group_stats_(std::move(group_stats)) {
  hash_ = Sha256Hex(PayloadJson().dump());
}

ModelBundle ModelBundle::Seal(FittedPipeline pipeline, FeatureSchema schema, double threshold,
                              BundleMetadata metadata, std::optional<GroupStats> group_stats) {
  const std::string& lineage = pipeline.training_lineage();
  if (pipeline.imputation().source_lineage != lineage || pipeline.scaling().source_lineage != lineage) {
    throw Error(ErrorCode::kIntegrity,
                "imputation plan, scaling plan and model were fitted on different data", "lineage");
  }
  if (metadata.data_hash.empty()) metadata.data_hash = lineage;
  if (metadata.data_hash != lineage) {
    throw Error(ErrorCode::kIntegrity, "metadata data hash does not match the training lineage",
                "data_hash");
  }
  for (const auto& def : pipeline.schema().features()) {
    const auto idx = schema.IndexOf(def.name);
    if (!idx || !(schema.feature(*idx) == def)) {
      throw Error(ErrorCode::kIntegrity, "selected feature '" + def.name + "' is not in the bundle schema",
                  def.name);
    }
  }
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw Error(ErrorCode::kRange, "threshold must lie in [0, 1]", "threshold");
  }
  return ModelBundle(std::move(pipeline), std::move(schema), threshold, std::move(metadata),
                     std::move(group_stats));
}

Json ModelBundle::PayloadJson() const {
  Json payload;
  payload["spec"] = pipeline_.spec().ToJson();
  payload["model"] = pipeline_.model().ToJson();
  payload["imputation_plan"] = pipeline_.imputation().ToJson();
  payload["scaling_plan"] = pipeline_.scaling().ToJson();
  payload["schema"] = schema_.ToJson();
  payload["selected_features"] = selected_features();
  payload["threshold"] = EncodeDouble(threshold_);
  payload["training_lineage"] = pipeline_.training_lineage();
  payload["metadata"] = {{"seed", metadata_.seed},
                         {"created", metadata_.created},
                         {"data_hash", metadata_.data_hash},
                         {"extra", metadata_.extra}};
  payload["group_stats"] = group_stats_ ? group_stats_->ToJson() : Json();
  return payload;
}

Json ModelBundle::ToJson() const {
  return {{"format_version", kBundleFormatVersion}, {"content_hash", hash_}, {"payload", PayloadJson()}};
}

void ModelBundle::Save(const std::filesystem::path& path) const { WriteJsonFile(path, ToJson()); }

ModelBundle ModelBundle::FromJson(const Json& json) {
  if (!json.is_object() || !json.contains("format_version")) {
    throw Error(ErrorCode::kSchema, "not a model bundle (no format_version)", "format_version");
  }
  const Json& version = json.at("format_version");
  if (!version.is_number_integer() || version.get<int>() != kBundleFormatVersion) {
    throw Error(ErrorCode::kUnsupportedVersion,
                "unsupported bundle format version " + version.dump() + " (this build reads version " +
                    std::to_string(kBundleFormatVersion) + ")",
                "format_version");
  }
  const Json& payload = Component(json, "payload");
  const std::string expected = RequireMember(json, "content_hash").get<std::string>();
  const std::string actual = Sha256Hex(payload.dump());
  if (actual != expected) {
    throw Error(ErrorCode::kIntegrity, "bundle content hash mismatch (file altered after sealing)",
                "content_hash");
  }
  ClassifierSpec spec = ClassifierSpec::FromJson(Component(payload, "spec"));
  ClassifierPtr model = ClassifierFromJson(Component(payload, "model"));
  ImputationPlan imputation = ImputationPlan::FromJson(Component(payload, "imputation_plan"));
  ScalingPlan scaling = ScalingPlan::FromJson(Component(payload, "scaling_plan"));
  FeatureSchema schema = FeatureSchema::FromJson(Component(payload, "schema"));
  const auto selected = Component(payload, "selected_features").get<std::vector<std::string>>();
  if (selected != imputation.schema.names()) {
    throw Error(ErrorCode::kIntegrity, "selected features disagree with the preprocessing plans",
                "selected_features");
  }
  const double threshold = DecodeDouble(Component(payload, "threshold"));
  const Json& meta = Component(payload, "metadata");
  BundleMetadata metadata;
  metadata.seed = meta.value("seed", std::uint64_t{0});
  metadata.created = meta.value("created", std::string());
  metadata.data_hash = meta.value("data_hash", std::string());
  if (meta.contains("extra")) metadata.extra = meta.at("extra");
  std::optional<GroupStats> stats;
  if (payload.contains("group_stats") && !payload.at("group_stats").is_null()) {
    stats = GroupStats::FromJson(payload.at("group_stats"));
  }
  FittedPipeline pipeline(std::move(spec), std::move(imputation), std::move(scaling), std::move(model),
                          Component(payload, "training_lineage").get<std::string>());
  ModelBundle bundle = Seal(std::move(pipeline), std::move(schema), threshold, std::move(metadata),
                            std::move(stats));
  if (bundle.hash_ != expected) {
    throw Error(ErrorCode::kIntegrity, "bundle does not re-serialize to its sealed hash", "content_hash");
  }
  return bundle;
}

ModelBundle ModelBundle::Load(const std::filesystem::path& path) {
  return FromJson(ReadJsonFile(path));
}

}  // namespace hkdrisk
