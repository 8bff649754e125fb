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

#include "hkdrisk/service/pipeline.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "hkdrisk/cohort/group_stats.h"
#include "hkdrisk/cohort/synthetic.h"
#include "hkdrisk/common/error.h"
#include "hkdrisk/common/hash.h"
#include "hkdrisk/common/log.h"
#include "hkdrisk/common/parallel.h"
#include "hkdrisk/common/random.h"
#include "hkdrisk/interpret/ablation.h"
#include "hkdrisk/models/gbdt.h"
#include "hkdrisk/posterior/prior.h"
#include "hkdrisk/posterior/summary.h"
#include "hkdrisk/preprocess/imputer.h"

namespace hkdrisk {
namespace fs = std::filesystem;
namespace {

// Seed streams derived from the run seed.
enum Stream : std::uint64_t {
  kSynthStream = 1,
  kSplitStream,
  kForestStream,
  kCvStream,
  kSmoteStream,
  kBootStream,
  kAblationStream,
  kPosteriorStream,
};

std::string ReadFileBytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kNotFound, "cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Writes files under the run directory and remembers them for the manifest
// (or for cleanup when a step fails).
class RunWriter {
 public:
  explicit RunWriter(fs::path root) : root_(std::move(root)) {}

  void Text(const std::string& rel, const std::string& text) {
    WriteTextFile(root_ / rel, text);
    written_.push_back({rel, Sha256Hex(text), text.size()});
  }
  void JsonFile(const std::string& rel, const Json& value) { Text(rel, value.dump(2) + "\n"); }
  void Record(const std::string& rel) {
    const std::string bytes = ReadFileBytes(root_ / rel);
    written_.push_back({rel, Sha256Hex(bytes), bytes.size()});
  }

  RunManifest Manifest() const {
    RunManifest m;
    m.files = written_;
    std::sort(m.files.begin(), m.files.end(),
              [](const ManifestEntry& a, const ManifestEntry& b) { return a.path < b.path; });
    return m;
  }

  void Cleanup() noexcept {
    std::error_code ec;
    std::set<fs::path> dirs;
    for (const auto& f : written_) {
      const fs::path p = root_ / f.path;
      fs::remove(p, ec);
      for (fs::path d = p.parent_path(); d != root_ && d.has_relative_path(); d = d.parent_path()) dirs.insert(d);
    }
    fs::remove(root_ / kManifestFile, ec);
    // Deepest first; only directories left empty go.
    for (auto it = dirs.rbegin(); it != dirs.rend(); ++it) {
      if (fs::is_empty(*it, ec)) fs::remove(*it, ec);
    }
    written_.clear();
  }

 private:
  fs::path root_;
  std::vector<ManifestEntry> written_;
};

template <typename Fn>
auto Step(int number, const char* name, const ProgressFn& progress, Fn&& fn) -> decltype(fn()) {
  if (progress) progress("step " + std::to_string(number) + " (" + name + ")");
  const std::string prefix = "step " + std::to_string(number) + " (" + name + "): ";
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.code(), prefix + e.what(), e.field());
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kPipeline, prefix + e.what());
  }
}

// Removes the files of an earlier run in the same directory so stale outputs
// cannot survive into the new manifest.
void RemovePreviousRun(const fs::path& root) {
  const fs::path manifest = root / kManifestFile;
  if (!fs::exists(manifest)) return;
  try {
    const RunManifest old = RunManifest::FromJson(ReadJsonFile(manifest));
    std::error_code ec;
    for (const auto& f : old.files) fs::remove(root / f.path, ec);
    fs::remove(manifest, ec);
  } catch (const Error& e) {
    LogWarning("ignoring unreadable previous manifest: " + std::string(e.what()));
  }
}

}  // namespace

// ---- manifest ---------------------------------------------------------------

Json RunManifest::ToJson() const {
  Json files_json = Json::array();
  for (const auto& f : files) files_json.push_back({{"path", f.path}, {"sha256", f.sha256}, {"bytes", f.bytes}});
  return {{"files", files_json}};
}

RunManifest RunManifest::FromJson(const Json& json) {
  RunManifest m;
  for (const auto& f : RequireMember(json, "files")) {
    m.files.push_back({RequireMember(f, "path").get<std::string>(), RequireMember(f, "sha256").get<std::string>(),
                       RequireMember(f, "bytes").get<std::uintmax_t>()});
  }
  return m;
}

std::vector<std::string> RunManifest::Verify(const fs::path& root) const {
  std::vector<std::string> bad;
  for (const auto& f : files) {
    const fs::path p = root / f.path;
    if (!fs::exists(p) || Sha256Hex(ReadFileBytes(p)) != f.sha256) bad.push_back(f.path);
  }
  return bad;
}

RunManifest LoadVerifiedManifest(const fs::path& run_dir) {
  const RunManifest m = RunManifest::FromJson(ReadJsonFile(run_dir / kManifestFile));
  const auto bad = m.Verify(run_dir);
  if (!bad.empty()) {
    throw Error(ErrorCode::kIntegrity, "run manifest does not verify: " + bad.front() +
                                           (bad.size() > 1 ? " and " + std::to_string(bad.size() - 1) + " more" : ""));
  }
  return m;
}

const TunedModel& PipelineResult::primary() const {
  for (const auto& m : models) {
    if (m.name == primary_model) return m;
  }
  throw Error(ErrorCode::kNotFound, "no model named " + primary_model);
}

const ModelEvaluation& PipelineResult::primary_evaluation() const {
  for (const auto& m : evaluation.models) {
    if (m.model == primary_model) return m;
  }
  throw Error(ErrorCode::kNotFound, "no evaluation for " + primary_model);
}

// ---- step building blocks ---------------------------------------------------------

FeatureSchema LoadConfigSchema(const RunConfig& config) {
  return config.schema_path.empty() ? DefaultHkdSchema() : LoadSchemaFile(config.schema_path);
}

Cohort LoadInputCohort(const RunConfig& config) {
  const FeatureSchema schema = LoadConfigSchema(config);
  if (!config.data_csv.empty()) {
    CsvLoadOptions options;
    options.range_policy = config.range_policy;
    return LoadCohortCsv(config.data_csv, schema, options);
  }
  const GroupStats stats = PublishedOutcomeStats();
  if (!(schema == stats.schema())) {
    throw Error(ErrorCode::kSchema, "synthetic cohorts use the built-in schema; set data.csv for a custom schema",
                "data.schema");
  }
  return GenerateSyntheticCohort(stats, config.synthetic_n, config.synthetic_prevalence,
                                 DeriveSeed(config.seed, kSynthStream));
}

CohortSplit SplitInputCohort(const RunConfig& config, const Cohort& cohort) {
  return StratifiedSplit(cohort, config.test_fraction, DeriveSeed(config.seed, kSplitStream));
}

SelectionReport SelectFeatures(const RunConfig& config, const Cohort& train) {
  // The forest needs complete rows; selection sees train-fitted imputation.
  const Cohort imputed = ApplyImputer(FitImputer(train), train);
  if (!config.selection) {
    std::vector<FeatureSelectionRow> rows;
    for (const auto& name : train.schema().names()) rows.push_back({name, 0.0, {}, true, true});
    SelectionReport all = ApplySelectionThresholds(std::move(rows), 0.0, 0.0);
    all.selected = train.schema().names();
    return all;
  }
  SelectionParams params;
  params.forest = config.forest;
  params.forest.seed = DeriveSeed(config.seed, kForestStream);
  params.rf_keep_threshold = config.rf_keep_threshold;
  params.mi_threshold = config.mi_threshold;
  params.mi_bins = config.mi_bins;
  return TwoStageSelect(imputed, params);
}

Dataset ImputedNatural(const ModelBundle& bundle, const Cohort& cohort) {
  const Cohort natural = ApplyImputer(bundle.pipeline().imputation(), cohort.SelectFeatures(bundle.selected_features()));
  return Dataset::FromCohort(natural);
}

std::vector<AleCurve> BundleAle(const ModelBundle& bundle, const Cohort& cohort,
                                const std::vector<std::string>& features, int n_bins) {
  const Dataset data = ImputedNatural(bundle, cohort);
  const auto selected = bundle.selected_features();
  std::vector<std::string> wanted = features;
  if (wanted.empty()) {
    for (std::size_t j = 0; j < selected.size(); ++j) {
      if (data.kinds[j] == FeatureKind::kContinuous) wanted.push_back(selected[j]);
    }
  }
  std::vector<std::size_t> index;
  for (const auto& name : wanted) {
    const auto it = std::find(selected.begin(), selected.end(), name);
    if (it == selected.end()) {
      throw Error(ErrorCode::kInvalidArgument, "ALE feature '" + name + "' is not a model feature", name);
    }
    index.push_back(static_cast<std::size_t>(it - selected.begin()));
  }
  const ScoreFn f = [&](std::span<const double> x) { return bundle.PredictProba(x); };
  std::vector<AleCurve> curves(index.size());
  for (std::size_t i = 0; i < index.size(); ++i) curves[i] = ComputeAle(f, data, index[i], n_bins, wanted[i]);
  return curves;
}

ShapAttribution ExplainRow(const ModelBundle& bundle, std::span<const double> natural) {
  const FittedPipeline& p = bundle.pipeline();
  const std::vector<double> x = p.PrepareRow(natural);
  ShapAttribution a;
  if (p.model().family() == ModelFamily::kGbdt) {
    a = TreeShap(p.model(), x);
  } else {
    Dataset reference;
    reference.rows = 1;
    reference.cols = x.size();
    reference.x = p.PrepareRow(p.imputation().fill);
    reference.y = {0};
    reference.kinds.assign(x.size(), FeatureKind::kContinuous);
    a = ExactShapBruteForce(p.model(), x, reference);
  }
  a.features = p.features();
  return a;
}

std::vector<ShapSummaryRow> ShapSummary(const ModelBundle& bundle, const Cohort& cohort) {
  const Cohort selected = cohort.SelectFeatures(bundle.selected_features());
  const std::size_t d = selected.cols();
  std::vector<ShapAttribution> per_row(selected.rows());
  ParallelFor(selected.rows(), [&](std::size_t r) { per_row[r] = ExplainRow(bundle, selected.row(r)); });
  std::vector<ShapSummaryRow> rows(d);
  for (std::size_t j = 0; j < d; ++j) {
    rows[j].feature = selected.schema().feature(j).name;
    for (const auto& a : per_row) {
      rows[j].mean_abs_phi += std::abs(a.phi[j]);
      rows[j].mean_phi += a.phi[j];
    }
    rows[j].mean_abs_phi /= static_cast<double>(per_row.size());
    rows[j].mean_phi /= static_cast<double>(per_row.size());
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ShapSummaryRow& a, const ShapSummaryRow& b) { return a.mean_abs_phi > b.mean_abs_phi; });
  return rows;
}

std::string ShapSummaryCsv(const std::vector<ShapSummaryRow>& rows) {
  std::ostringstream os;
  os << "feature,mean_abs_phi,mean_phi\n";
  for (const auto& r : rows) os << r.feature << ',' << EncodeDouble(r.mean_abs_phi) << ',' << EncodeDouble(r.mean_phi) << '\n';
  return os.str();
}

// ---- the run ---------------------------------------------------------------------

PipelineResult RunPipeline(const RunConfig& config, const ProgressFn& progress) {
  config.Validate();
  PipelineResult result;
  result.output_dir = config.output_dir;
  result.primary_model = config.primary_model;
  const fs::path root = config.output_dir;
  fs::create_directories(root);
  RemovePreviousRun(root);
  RunWriter out(root);

  try {
    out.JsonFile("config.json", config.ToJson());

    Step(1, "ingest", progress, [&] {
      const Cohort cohort = LoadInputCohort(config);
      CohortSplit split = SplitInputCohort(config, cohort);
      result.train = std::move(split.train);
      result.test = std::move(split.test);
      out.Text("data/train.csv", FormatCohortCsv(result.train));
      out.Text("data/test.csv", FormatCohortCsv(result.test));
    });

    Step(2, "preprocess", progress, [&] {
      result.split_comparison = CompareSplit(result.train, result.test);
      out.Text("report/split_comparison.csv", result.split_comparison.ToCsv());
      out.Text("report/group_comparison.csv", CompareByLabel(result.train).ToCsv());
    });

    Step(3, "select", progress, [&] {
      result.selection = SelectFeatures(config, result.train);
      out.JsonFile("report/selection.json", result.selection.ToJson());
    });

    PipelineOptions pipeline_options = config.smote;
    pipeline_options.smote_seed = DeriveSeed(config.seed, kSmoteStream);

    std::vector<std::vector<ClassifierSpec>> grids;
    Step(4, "oversample", progress, [&] {
      // SMOTE runs inside each CV fold and on the final training split; this
      // step only checks that the minority class can be oversampled.
      const std::size_t minority = std::min(result.train.CountLabel(0), result.train.CountLabel(1));
      if (config.smote.smote && minority < 2) {
        throw Error(ErrorCode::kStratification, "SMOTE needs at least two minority rows", "smote");
      }
    });

    Step(5, "train/tune", progress, [&] {
      // Every grid is expanded before the first fit so a bad one fails fast.
      for (std::size_t i = 0; i < config.models.size(); ++i) {
        const ModelGridConfig& m = config.models[i];
        std::vector<ClassifierSpec> grid = m.Expand();
        if (grid.empty()) {
          throw Error(ErrorCode::kInvalidArgument,
                      "empty hyperparameter grid for model '" + m.base.name + "' (family " +
                          std::string(ModelFamilyName(m.base.family())) + ")",
                      "models[" + std::to_string(i) + "].grid");
        }
        grids.push_back(std::move(grid));
      }
      for (std::size_t i = 0; i < config.models.size(); ++i) {
        const std::string& name = config.models[i].base.name;
        if (progress) progress("  tuning " + name + " (" + std::to_string(grids[i].size()) + " cells)");
        CvOptions cv;
        cv.k = config.cv_folds;
        cv.seed = DeriveSeed(config.seed, kCvStream);
        cv.pipeline = pipeline_options;
        CvResult tuned = CrossValidateGrid(result.train, result.selection.selected, grids[i], cv);
        out.Text("report/cv/" + FeatureSlug(name) + ".csv", tuned.ToCsv());
        FittedPipeline fitted = FitPipeline(result.train, result.selection.selected, tuned.best_cell().spec,
                                            pipeline_options);
        result.models.push_back({name, std::move(tuned), std::move(fitted)});
      }
    });

    double threshold = 0.5;
    Step(6, "evaluate", progress, [&] {
      EvaluationOptions eo;
      eo.min_sensitivity = config.min_sensitivity;
      eo.n_boot = config.n_boot;
      eo.seed = DeriveSeed(config.seed, kBootStream);
      for (const auto& m : result.models) {
        result.evaluation.models.push_back(EvaluateScoredSet(m.name, m.pipeline.Score(result.test), eo));
      }
      result.evaluation.comparisons.push_back({"train_vs_test", result.split_comparison});
      result.evaluation.comparisons.push_back({"survivor_vs_non_survivor", CompareByLabel(result.train)});
      threshold = result.primary_evaluation().metrics.threshold;

      Json tuning = Json::array();
      for (const auto& m : result.models) {
        tuning.push_back({{"model", m.name},
                          {"best", m.cv.best_cell().spec.ToJson()},
                          {"cv_mean_auroc", EncodeDouble(m.cv.best_cell().mean_auroc)},
                          {"cv_sd_auroc", EncodeDouble(m.cv.best_cell().sd_auroc)},
                          {"cells", m.cv.cells.size()}});
      }
      Json metrics = result.evaluation.ToJson();
      metrics["primary_model"] = config.primary_model;
      metrics["threshold"] = EncodeDouble(threshold);
      metrics["min_sensitivity"] = EncodeDouble(config.min_sensitivity);
      metrics["selected_features"] = result.selection.selected;
      metrics["tuning"] = tuning;
      out.JsonFile("report/metrics.json", metrics);
      out.Text("report/metrics.csv", result.evaluation.MetricsCsv());
      out.Text("report/roc.csv", result.evaluation.RocCsv());

      BundleMetadata meta;
      meta.seed = config.seed;
      meta.extra = {{"primary_model", config.primary_model}, {"cv_folds", config.cv_folds}};
      const ModelBundle bundle = ModelBundle::Seal(result.primary().pipeline, result.train.schema(), threshold, meta,
                                                   SummarizeByLabel(result.train));
      result.bundle_hash = bundle.hash();
      bundle.Save(root / kBundleFile);
      out.Record(kBundleFile);
    });

    if (config.interpret) {
      Step(7, "interpret", progress, [&] {
        const ModelBundle bundle = ModelBundle::Load(root / kBundleFile);
        const TunedModel& primary = result.primary();

        if (result.selection.selected.size() >= 2) {
          AblationOptions ao;
          ao.pipeline = pipeline_options;
          ao.n_boot = config.ablation_boot;
          ao.seed = DeriveSeed(config.seed, kAblationStream);
          const AblationResult ablation = AblationStudy(result.train, result.test, result.selection.selected,
                                                        primary.pipeline.spec(), ao, &primary.pipeline);
          out.Text("report/ablation.csv", ablation.ToCsv());
        }

        for (const AleCurve& curve : BundleAle(bundle, result.train, config.ale_features, config.ale_bins)) {
          out.Text("report/ale/" + FeatureSlug(curve.feature) + ".csv", curve.ToCsv());
        }

        out.Text("report/shap_summary.csv", ShapSummaryCsv(ShapSummary(bundle, result.test)));

        const PriorSpec prior = BuildPrior(*bundle.group_stats(), config.posterior_group, bundle.schema())
                                    .AlignTo(bundle.selected_features());
        const std::uint64_t post_seed = DeriveSeed(config.seed, kPosteriorStream);
        RiskPosterior posterior;
        if (config.posterior_sampler == "mc") {
          posterior = SamplePosteriorMc(bundle, prior, config.posterior_draws, post_seed);
        } else {
          DreamOptions dream = config.dream;
          dream.seed = post_seed;
          posterior = SamplePosteriorDream(bundle, prior, dream);
        }
        const PosteriorSummary summary = SummarizePosterior(posterior);
        out.JsonFile("report/posterior.json", {{"group", config.posterior_group},
                                               {"bundle_hash", bundle.hash()},
                                               {"prior", prior.ToJson()},
                                               {"summary", summary.ToJson()},
                                               {"diagnostics", posterior.DiagnosticsJson()}});
        out.Text("report/posterior_histogram.csv", summary.HistogramCsv());
      });
    }

    result.manifest = out.Manifest();
    WriteJsonFile(root / kManifestFile, result.manifest.ToJson());
  } catch (...) {
    out.Cleanup();
    throw;
  }
  return result;
}

}  // namespace hkdrisk
