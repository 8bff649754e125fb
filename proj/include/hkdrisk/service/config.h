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

#ifndef HKDRISK_SERVICE_CONFIG_H_
#define HKDRISK_SERVICE_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hkdrisk/cohort/csv.h"
#include "hkdrisk/common/json_util.h"
#include "hkdrisk/models/fitted_pipeline.h"
#include "hkdrisk/models/spec.h"
#include "hkdrisk/posterior/sampler.h"
#include "hkdrisk/select/forest.h"

namespace hkdrisk {

// Seed of the committed reference run.
inline constexpr std::uint64_t kDefaultSeed = 20;

// One tuned model: a base spec plus a hyperparameter grid. The grid is either
// an object of axes {param: [values...]} expanded as a Cartesian product, or
// an array of explicit parameter overrides, one per cell. A missing grid is a
// single cell at the base parameters.
struct ModelGridConfig {
  ClassifierSpec base;
  Json grid;  // object, array or null

  // Every cell validated; empty when an axis or the override list is empty.
  std::vector<ClassifierSpec> Expand() const;
  Json ToJson() const;
  static ModelGridConfig FromJson(const Json& json, std::uint64_t seed);
};

struct RunConfig {
  std::uint64_t seed = kDefaultSeed;

  // Input: a CSV cohort, or a synthetic one from the published group stats.
  std::string data_csv;
  std::string schema_path;  // empty: built-in 18-feature schema
  RangePolicy range_policy = RangePolicy::kReject;
  std::size_t synthetic_n = 1366;
  double synthetic_prevalence = 0.128;

  double test_fraction = 0.3;

  bool selection = true;
  ForestParams forest;
  std::optional<double> rf_keep_threshold;
  double mi_threshold = 0.001;
  int mi_bins = 10;

  PipelineOptions smote;
  int cv_folds = 5;
  std::vector<ModelGridConfig> models;
  // Model sealed into the bundle and used for interpretation.
  std::string primary_model = "catboost_like";

  double min_sensitivity = 0.80;
  int n_boot = 2000;

  bool interpret = true;
  int ablation_boot = 200;
  int ale_bins = 10;
  std::vector<std::string> ale_features;  // empty: every continuous selected feature

  std::string posterior_group = "non_survivor";
  std::string posterior_sampler = "dream";  // "mc" or "dream"
  int posterior_draws = 50000;  // mc only
  DreamOptions dream;

  std::string output_dir = "run";

  // Throws kInvalidArgument naming the offending field.
  void Validate() const;
  Json ToJson() const;
  // Missing fields keep their defaults; unknown top-level keys are rejected.
  static RunConfig FromJson(const Json& json);
  static RunConfig Load(const std::filesystem::path& path);
};

// Six models: three boosting flavours over the GBDT lattice, logistic
// regression over C x penalty, naive Bayes and the shallow network.
std::vector<ModelGridConfig> DefaultModelGrids(std::uint64_t seed);
RunConfig DefaultRunConfig();

}  // namespace hkdrisk

#endif  // HKDRISK_SERVICE_CONFIG_H_
