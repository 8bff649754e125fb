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

#ifndef HKDRISK_SERVICE_PIPELINE_H_
#define HKDRISK_SERVICE_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "hkdrisk/cohort/cohort.h"
#include "hkdrisk/cohort/split.h"
#include "hkdrisk/common/json_util.h"
#include "hkdrisk/evaluate/comparison.h"
#include "hkdrisk/evaluate/evaluation.h"
#include "hkdrisk/interpret/ale.h"
#include "hkdrisk/interpret/shap.h"
#include "hkdrisk/models/bundle.h"
#include "hkdrisk/models/cross_validation.h"
#include "hkdrisk/select/two_stage.h"
#include "hkdrisk/service/config.h"

namespace hkdrisk {

struct ManifestEntry {
  std::string path;  // relative to the run directory, '/' separated
  std::string sha256;
  std::uintmax_t bytes = 0;
};

struct RunManifest {
  std::vector<ManifestEntry> files;  // sorted by path

  Json ToJson() const;
  static RunManifest FromJson(const Json& json);
  // Paths (relative to `root`) that are missing or whose hash differs.
  std::vector<std::string> Verify(const std::filesystem::path& root) const;
};

inline constexpr char kManifestFile[] = "manifest.json";
inline constexpr char kBundleFile[] = "model/bundle.json";

struct TunedModel {
  std::string name;
  CvResult cv;
  FittedPipeline pipeline;
};

struct PipelineResult {
  std::filesystem::path output_dir;
  RunManifest manifest;
  Cohort train, test;
  ComparisonTable split_comparison;
  SelectionReport selection;
  std::vector<TunedModel> models;
  EvaluationReport evaluation;
  std::string primary_model;
  std::string bundle_hash;

  const TunedModel& primary() const;
  const ModelEvaluation& primary_evaluation() const;
};

using ProgressFn = std::function<void(const std::string&)>;

// Steps of the run, in order: 1 ingest, 2 preprocess, 3 select,
// 4 oversample (SMOTE inside CV folds), 5 train/tune, 6 evaluate,
// 7 interpret. Output tree under config.output_dir:
//   config.json, manifest.json, data/{train,test}.csv, model/bundle.json,
//   report/{metrics.json, metrics.csv, roc.csv, split_comparison.csv,
//   group_comparison.csv, selection.json, cv/<model>.csv, ablation.csv,
//   ale/<feature>.csv, shap_summary.csv, posterior.json,
//   posterior_histogram.csv}
// No file carries timestamps, so identical inputs give identical bytes. A
// failing step raises its original error code with the step named in the
// message, after deleting every file the run had written.
PipelineResult RunPipeline(const RunConfig& config, const ProgressFn& progress = {});

// Step 1 building blocks, shared with the CLI.
FeatureSchema LoadConfigSchema(const RunConfig& config);
Cohort LoadInputCohort(const RunConfig& config);
CohortSplit SplitInputCohort(const RunConfig& config, const Cohort& cohort);
SelectionReport SelectFeatures(const RunConfig& config, const Cohort& train);

// Natural-unit rows of `cohort` over the bundle's features, imputed with the
// bundle's plan.
Dataset ImputedNatural(const ModelBundle& bundle, const Cohort& cohort);

// ALE curves of bundle risk over `features` (all continuous selected features
// when empty) on `cohort`.
std::vector<AleCurve> BundleAle(const ModelBundle& bundle, const Cohort& cohort,
                                const std::vector<std::string>& features, int n_bins);

// Log-odds SHAP attribution of one natural-unit row (over the bundle's
// features) after imputation and scaling. Tree models use TreeSHAP; other
// families use the exact Shapley sum against the imputation fill vector as
// the single reference row. Feature names are attached.
ShapAttribution ExplainRow(const ModelBundle& bundle, std::span<const double> natural);

struct ShapSummaryRow {
  std::string feature;
  double mean_abs_phi = 0.0;
  double mean_phi = 0.0;
};
// Log-odds attributions of every row in `cohort`, averaged per feature and
// sorted by mean |phi| (descending).
std::vector<ShapSummaryRow> ShapSummary(const ModelBundle& bundle, const Cohort& cohort);
std::string ShapSummaryCsv(const std::vector<ShapSummaryRow>& rows);

// Refuses to load a manifest whose files do not verify.
RunManifest LoadVerifiedManifest(const std::filesystem::path& run_dir);

}  // namespace hkdrisk

#endif  // HKDRISK_SERVICE_PIPELINE_H_
