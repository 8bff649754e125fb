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

// hkdrisk: command-line driver for the mortality risk pipeline and service.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hkdrisk/cohort/csv.h"
#include "hkdrisk/cohort/group_stats.h"
#include "hkdrisk/cohort/synthetic.h"
#include "hkdrisk/common/error.h"
#include "hkdrisk/common/log.h"
#include "hkdrisk/evaluate/evaluation.h"
#include "hkdrisk/interpret/ablation.h"
#include "hkdrisk/service/config.h"
#include "hkdrisk/service/handlers.h"
#include "hkdrisk/service/pipeline.h"
#include "hkdrisk/service/server.h"

namespace fs = std::filesystem;
using namespace hkdrisk;

namespace {

struct GlobalFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
};

RunConfig ResolveConfig(const GlobalFlags& g) {
  Json j = g.config.empty() ? Json::object() : ReadJsonFile(g.config);
  // The seed is applied before parsing so model seeds inherit it.
  if (g.seed) j["seed"] = *g.seed;
  if (!g.out.empty()) j["output_dir"] = g.out;
  return RunConfig::FromJson(j);
}

fs::path OutDir(const GlobalFlags& g, const RunConfig& c) { return g.out.empty() ? fs::path(c.output_dir) : fs::path(g.out); }

void Progress(const std::string& msg) { std::cerr << msg << '\n'; }

Cohort LoadData(const std::string& path, const ModelBundle& bundle) {
  return LoadCohortCsv(path, bundle.schema());
}

std::uint64_t SeedOr(const GlobalFlags& g, std::uint64_t fallback) { return g.seed ? *g.seed : fallback; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interpretable ICU mortality risk modeling"};
  app.require_subcommand(1);
  GlobalFlags g;
  app.add_option("--config", g.config, "Run configuration JSON")->check(CLI::ExistingFile);
  app.add_option("--seed", g.seed, "Master seed (overrides the config)");
  app.add_option("--out", g.out, "Output directory");

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic cohort from the published group statistics");
  std::size_t synth_n = 1366;
  double synth_prev = 0.128;
  synth->add_option("--n", synth_n, "Rows")->capture_default_str();
  synth->add_option("--prevalence", synth_prev, "Share of non-survivors")->capture_default_str();

  // select
  auto* select = app.add_subcommand("select", "Two-stage feature selection on a training CSV");
  std::string select_data;
  select->add_option("--data", select_data, "Cohort CSV")->required()->check(CLI::ExistingFile);

  auto* train = app.add_subcommand("train", "Run steps 1-6 and seal the model bundle");
  auto* report = app.add_subcommand("report", "Run the full pipeline and write the report tree");

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "Score a CSV with a bundle at its sealed threshold");
  std::string bundle_path, data_path;
  int n_boot = kDefaultBootstrapResamples;
  evaluate->add_option("--bundle", bundle_path, "Bundle JSON")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--data", data_path, "Cohort CSV")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--n-boot", n_boot, "Bootstrap resamples")->capture_default_str();

  // ablate
  auto* ablate = app.add_subcommand("ablate", "Leave-one-feature-out retraining on the configured split");
  std::string ablate_bundle;
  int ablate_boot = 200;
  ablate->add_option("--bundle", ablate_bundle, "Take spec and features from this bundle")->check(CLI::ExistingFile);
  ablate->add_option("--n-boot", ablate_boot, "Paired bootstrap resamples")->capture_default_str();

  // ale
  auto* ale = app.add_subcommand("ale", "Accumulated local effect curves");
  std::vector<std::string> ale_features;
  int ale_bins = kDefaultAleBins;
  ale->add_option("--bundle", bundle_path, "Bundle JSON")->required()->check(CLI::ExistingFile);
  ale->add_option("--data", data_path, "Cohort CSV")->required()->check(CLI::ExistingFile);
  ale->add_option("--feature", ale_features, "Feature name (repeatable; default all continuous)");
  ale->add_option("--bins", ale_bins, "Quantile bins")->capture_default_str();

  // shap
  auto* shap = app.add_subcommand("shap", "SHAP attributions");
  std::string shap_row;
  shap->add_option("--bundle", bundle_path, "Bundle JSON")->required()->check(CLI::ExistingFile);
  shap->add_option("--data", data_path, "Cohort CSV")->required()->check(CLI::ExistingFile);
  shap->add_option("--row", shap_row, "Explain this row_id only (JSON to stdout)");

  // posterior
  auto* posterior = app.add_subcommand("posterior", "Risk posterior under a feature prior");
  std::string group = kNonSurvivorGroup, prior_file, sampler = "dream", stats_source;
  int draws = 50000;
  DreamOptions dream;
  posterior->add_option("--bundle", bundle_path, "Bundle JSON")->required()->check(CLI::ExistingFile);
  posterior->add_option("--group", group, "survivor or non_survivor")->capture_default_str();
  posterior->add_option("--stats", stats_source, "Group statistics: bundle or published");
  posterior->add_option("--prior", prior_file, "Custom prior JSON (replaces --group)")->check(CLI::ExistingFile);
  posterior->add_option("--sampler", sampler, "mc or dream")->capture_default_str();
  posterior->add_option("--draws", draws, "Monte Carlo draws")->capture_default_str();
  posterior->add_option("--chains", dream.chains, "DREAM chains")->capture_default_str();
  posterior->add_option("--iterations", dream.iterations, "DREAM iterations per chain")->capture_default_str();
  posterior->add_option("--burn-in", dream.burn_in, "DREAM burn-in per chain")->capture_default_str();

  // serve
  auto* serve = app.add_subcommand("serve", "HTTP prediction service");
  std::string host = "127.0.0.1";
  int port = 8080;
  serve->add_option("--bundle", bundle_path, "Bundle JSON")->required()->check(CLI::ExistingFile);
  serve->add_option("--host", host, "Bind address")->capture_default_str();
  serve->add_option("--port", port, "Port (0 picks one)")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed()) {
      const fs::path out = g.out.empty() ? fs::path(".") : fs::path(g.out);
      const Cohort c = GenerateSyntheticCohort(PublishedOutcomeStats(), synth_n, synth_prev, SeedOr(g, kDefaultSeed));
      WriteCohortCsv(out / "cohort.csv", c);
      std::cout << (out / "cohort.csv").string() << ": " << c.rows() << " rows, " << c.CountLabel(1)
                << " non-survivors\n";
    } else if (select->parsed()) {
      RunConfig c = ResolveConfig(g);
      c.data_csv = select_data;
      const Cohort data = LoadInputCohort(c);
      const SelectionReport r = SelectFeatures(c, data);
      WriteJsonFile(OutDir(g, c) / "selection.json", r.ToJson());
      for (const auto& f : r.selected) std::cout << f << '\n';
    } else if (train->parsed() || report->parsed()) {
      RunConfig c = ResolveConfig(g);
      c.interpret = report->parsed();
      const PipelineResult r = RunPipeline(c, Progress);
      const ModelEvaluation& e = r.primary_evaluation();
      std::cout << "primary " << r.primary_model << ": test AUROC " << EncodeDouble(*e.metrics.auroc) << " ["
                << EncodeDouble(e.ci.lo) << ", " << EncodeDouble(e.ci.hi) << "], sensitivity "
                << EncodeDouble(e.metrics.sensitivity) << ", specificity " << EncodeDouble(e.metrics.specificity)
                << "\nbundle " << (r.output_dir / kBundleFile).string() << " (" << r.bundle_hash << ")\n"
                << r.manifest.files.size() << " files in " << (r.output_dir / kManifestFile).string() << '\n';
    } else if (evaluate->parsed()) {
      const ModelBundle bundle = ModelBundle::Load(bundle_path);
      const Cohort data = LoadData(data_path, bundle);
      EvaluationOptions eo;
      eo.fixed_threshold = bundle.threshold();
      eo.n_boot = n_boot;
      eo.seed = SeedOr(g, 0);
      EvaluationReport rep;
      rep.models.push_back(EvaluateScoredSet(bundle.pipeline().spec().name, bundle.pipeline().Score(data), eo));
      const fs::path out = g.out.empty() ? fs::path(".") : fs::path(g.out);
      WriteJsonFile(out / "metrics.json", rep.ToJson());
      WriteTextFile(out / "roc.csv", rep.RocCsv());
      std::cout << rep.MetricsCsv();
    } else if (ablate->parsed()) {
      const RunConfig c = ResolveConfig(g);
      const CohortSplit split = SplitInputCohort(c, LoadInputCohort(c));
      ClassifierSpec spec;
      std::vector<std::string> features;
      if (!ablate_bundle.empty()) {
        const ModelBundle bundle = ModelBundle::Load(ablate_bundle);
        spec = bundle.pipeline().spec();
        features = bundle.selected_features();
      } else {
        for (const auto& m : c.models) {
          if (m.base.name == c.primary_model) spec = m.base;
        }
        features = SelectFeatures(c, split.train).selected;
      }
      AblationOptions ao;
      ao.pipeline = c.smote;
      ao.n_boot = ablate_boot;
      ao.seed = c.seed;
      const AblationResult r = AblationStudy(split.train, split.test, features, spec, ao);
      WriteTextFile(OutDir(g, c) / "ablation.csv", r.ToCsv());
      std::cout << r.ToCsv();
    } else if (ale->parsed()) {
      const ModelBundle bundle = ModelBundle::Load(bundle_path);
      const fs::path out = g.out.empty() ? fs::path(".") : fs::path(g.out);
      for (const AleCurve& curve : BundleAle(bundle, LoadData(data_path, bundle), ale_features, ale_bins)) {
        const fs::path p = out / "ale" / (FeatureSlug(curve.feature) + ".csv");
        WriteTextFile(p, curve.ToCsv());
        std::cout << p.string() << '\n';
      }
    } else if (shap->parsed()) {
      const ModelBundle bundle = ModelBundle::Load(bundle_path);
      const Cohort data = LoadData(data_path, bundle);
      if (!shap_row.empty()) {
        const auto& ids = data.row_ids();
        const auto it = std::find(ids.begin(), ids.end(), shap_row);
        if (it == ids.end()) throw Error(ErrorCode::kNotFound, "no row_id " + shap_row, "row");
        const Cohort one = data.SelectRows({static_cast<std::size_t>(it - ids.begin())})
                               .SelectFeatures(bundle.selected_features());
        std::cout << ExplainRow(bundle, one.row(0)).ToJson().dump(2) << '\n';
      } else {
        const std::string csv = ShapSummaryCsv(ShapSummary(bundle, data));
        WriteTextFile((g.out.empty() ? fs::path(".") : fs::path(g.out)) / "shap_summary.csv", csv);
        std::cout << csv;
      }
    } else if (posterior->parsed()) {
      const ModelBundle bundle = ModelBundle::Load(bundle_path);
      Json req = {{"sampler", sampler}, {"seed", SeedOr(g, 0)}};
      if (!prior_file.empty()) {
        req["prior"] = ReadJsonFile(prior_file);
      } else {
        req["group"] = group;
        if (!stats_source.empty()) req["stats"] = stats_source;
      }
      if (sampler == "mc") {
        req["draws"] = draws;
      } else {
        req["chains"] = dream.chains;
        req["iterations"] = dream.iterations;
        req["burn_in"] = dream.burn_in;
      }
      const Json body = HandlePosterior(req, bundle);
      const fs::path out = g.out.empty() ? fs::path(".") : fs::path(g.out);
      WriteJsonFile(out / "posterior.json", body);
      // Rebuild the CSV from the served payload.
      std::string csv = "bin_lo,bin_hi,count\n";
      const Json& h = body["summary"]["histogram"];
      for (std::size_t b = 0; b < h["counts"].size(); ++b) {
        csv += EncodeDouble(h["edges"][b].get<double>()) + "," + EncodeDouble(h["edges"][b + 1].get<double>()) + "," +
               std::to_string(h["counts"][b].get<std::size_t>()) + "\n";
      }
      WriteTextFile(out / "posterior_histogram.csv", csv);
      std::cout << body["summary"].dump(2) << '\n';
    } else if (serve->parsed()) {
      PredictionService service{fs::path(bundle_path)};
      HttpServer server(service);
      const int bound = server.Bind(host, port);
      std::cerr << "serving " << service.snapshot()->hash() << " on http://" << host << ":" << bound << '\n';
      server.Run();
    }
  } catch (const Error& e) {
    std::cerr << "error [" << ErrorCodeName(e.code()) << "]" << (e.field().empty() ? "" : " " + e.field()) << ": "
              << e.what() << '\n';
    return HttpStatusFor(e.code()) / 100 == 4 ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
