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

#include "hkdrisk/service/config.h"

#include <cmath>
#include <set>

#include "hkdrisk/common/error.h"

namespace hkdrisk {
namespace {

void Check(bool ok, const std::string& field, const std::string& rule) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, "config: " + field + " " + rule, field);
}

void RejectUnknown(const Json& section, const std::string& where, const std::set<std::string>& known) {
  if (!section.is_object()) throw Error(ErrorCode::kSchema, "config: " + where + " must be an object", where);
  for (const auto& [key, value] : section.items()) {
    if (!known.count(key)) {
      const std::string field = where.empty() ? key : where + "." + key;
      throw Error(ErrorCode::kSchema, "config: unknown field \"" + field + "\"", field);
    }
  }
}

template <typename T>
void Get(const Json& j, const char* key, T& out) {
  if (j.contains(key) && !j.at(key).is_null()) out = j.at(key).get<T>();
}

void GetDouble(const Json& j, const char* key, double& out) {
  if (j.contains(key) && !j.at(key).is_null()) out = DecodeDouble(j.at(key));
}

std::string RangePolicyName(RangePolicy p) { return p == RangePolicy::kReject ? "reject" : "clamp"; }

Json CellJson(const ClassifierSpec& base, const Json& overrides) {
  Json j = base.ToJson();
  for (const auto& [key, value] : overrides.items()) {
    if (!j["params"].contains(key)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "grid for model '" + base.name + "' sets unknown " + std::string(ModelFamilyName(base.family())) +
                      " parameter '" + key + "'",
                  key);
    }
    j["params"][key] = value;
  }
  return j;
}

}  // namespace

std::vector<ClassifierSpec> ModelGridConfig::Expand() const {
  std::vector<ClassifierSpec> out;
  if (grid.is_null()) {
    out.push_back(base);
    return out;
  }
  if (grid.is_array()) {
    for (const auto& cell : grid) out.push_back(ClassifierSpec::FromJson(CellJson(base, cell)));
    return out;
  }
  if (!grid.is_object()) throw Error(ErrorCode::kSchema, "grid must be an object, an array or null", "grid");
  std::vector<Json> cells{Json::object()};
  for (const auto& [key, values] : grid.items()) {
    if (!values.is_array()) throw Error(ErrorCode::kSchema, "grid axis '" + key + "' must be an array", key);
    std::vector<Json> next;
    for (const auto& cell : cells) {
      for (const auto& v : values) {
        Json c = cell;
        c[key] = v;
        next.push_back(std::move(c));
      }
    }
    cells = std::move(next);
  }
  for (const auto& cell : cells) out.push_back(ClassifierSpec::FromJson(CellJson(base, cell)));
  return out;
}

Json ModelGridConfig::ToJson() const {
  Json j = base.ToJson();
  j["grid"] = grid;
  return j;
}

ModelGridConfig ModelGridConfig::FromJson(const Json& json, std::uint64_t seed) {
  RejectUnknown(json, "models[]", {"name", "family", "seed", "params", "grid"});
  Json spec = json;
  spec.erase("grid");
  if (!spec.contains("seed")) spec["seed"] = seed;
  if (!spec.contains("params")) spec["params"] = Json::object();
  ModelGridConfig out;
  out.base = ClassifierSpec::FromJson(spec);
  out.grid = json.contains("grid") ? json.at("grid") : Json();
  return out;
}

std::vector<ModelGridConfig> DefaultModelGrids(std::uint64_t seed) {
  const Json gbdt_grid = {{"max_depth", {3, 4, 6}},
                          {"learning_rate", {0.03, 0.1}},
                          {"n_trees", {200, 500}},
                          {"reg_lambda", {1.0, 5.0}}};
  std::vector<ModelGridConfig> out;
  ClassifierSpec cat = CatBoostLike(seed);
  cat.name = "catboost_like";
  ClassifierSpec lgb = LightGbmLike(seed);
  lgb.name = "lightgbm_like";
  ClassifierSpec xgb = XgBoostLike(seed);
  xgb.name = "xgboost_like";
  ClassifierSpec lr = LogisticBaseline(seed);
  lr.name = "logistic";
  ClassifierSpec nb = NaiveBayesBaseline(seed);
  nb.name = "naive_bayes";
  ClassifierSpec nn = ShallowNnBaseline(seed);
  nn.name = "shallow_nn";
  out.push_back({cat, gbdt_grid});
  out.push_back({lgb, gbdt_grid});
  out.push_back({xgb, gbdt_grid});
  out.push_back({lr, {{"C", {0.01, 0.1, 1.0, 10.0}}, {"penalty", {"l1", "l2"}}}});
  out.push_back({nb, Json()});
  out.push_back({nn, {{"hidden", {16, 32}}, {"dropout", {0.0, 0.2}}}});
  return out;
}

RunConfig DefaultRunConfig() {
  RunConfig c;
  c.models = DefaultModelGrids(c.seed);
  return c;
}

void RunConfig::Validate() const {
  Check(data_csv.empty() ? synthetic_n >= 20 : true, "data.synthetic.n", "must be >= 20");
  Check(synthetic_prevalence > 0.0 && synthetic_prevalence < 1.0, "data.synthetic.prevalence", "must lie in (0, 1)");
  Check(test_fraction > 0.0 && test_fraction < 1.0, "split.test_fraction", "must lie in (0, 1)");
  Check(forest.n_trees >= 1, "selection.rf_trees", "must be >= 1");
  Check(forest.max_depth >= 1, "selection.rf_max_depth", "must be >= 1");
  Check(forest.min_leaf >= 1, "selection.rf_min_leaf", "must be >= 1");
  Check(!rf_keep_threshold || *rf_keep_threshold >= 0.0, "selection.rf_keep_threshold", "must be >= 0");
  Check(mi_threshold >= 0.0, "selection.mi_threshold", "must be >= 0");
  Check(mi_bins >= 2, "selection.mi_bins", "must be >= 2");
  Check(smote.smote_k >= 1, "smote.k", "must be >= 1");
  Check(smote.smote_ratio > 0.0 && smote.smote_ratio <= 1.0, "smote.ratio", "must lie in (0, 1]");
  Check(cv_folds >= 2, "cv.folds", "must be >= 2");
  Check(!models.empty(), "models", "must list at least one model");
  std::set<std::string> names;
  bool primary_found = false;
  for (const auto& m : models) {
    Check(names.insert(m.base.name).second, "models", "has duplicate name '" + m.base.name + "'");
    primary_found |= m.base.name == primary_model;
  }
  Check(primary_found, "primary_model", "'" + primary_model + "' is not among models");
  Check(min_sensitivity > 0.0 && min_sensitivity <= 1.0, "evaluation.min_sensitivity", "must lie in (0, 1]");
  Check(n_boot >= 1, "evaluation.n_boot", "must be >= 1");
  Check(ablation_boot >= 1, "interpret.ablation_boot", "must be >= 1");
  Check(ale_bins >= 1, "interpret.ale_bins", "must be >= 1");
  Check(posterior_group == "survivor" || posterior_group == "non_survivor", "posterior.group",
        "must be survivor or non_survivor");
  Check(posterior_sampler == "mc" || posterior_sampler == "dream", "posterior.sampler", "must be mc or dream");
  Check(posterior_draws >= kMinPosteriorDraws, "posterior.draws", "must be >= 100");
  Check(dream.chains >= 3, "posterior.chains", "must be >= 3");
  Check(dream.burn_in >= 0 && dream.iterations > dream.burn_in, "posterior.iterations", "must exceed burn_in");
  Check(!output_dir.empty(), "output_dir", "must be set");
}

Json RunConfig::ToJson() const {
  Json models_json = Json::array();
  for (const auto& m : models) models_json.push_back(m.ToJson());
  return {
      {"seed", seed},
      {"output_dir", output_dir},
      {"data",
       {{"csv", data_csv},
        {"schema", schema_path},
        {"range_policy", RangePolicyName(range_policy)},
        {"synthetic", {{"n", synthetic_n}, {"prevalence", EncodeDouble(synthetic_prevalence)}}}}},
      {"split", {{"test_fraction", EncodeDouble(test_fraction)}}},
      {"selection",
       {{"enabled", selection},
        {"rf_trees", forest.n_trees},
        {"rf_max_depth", forest.max_depth},
        {"rf_min_leaf", forest.min_leaf},
        {"rf_keep_threshold", rf_keep_threshold ? Json(EncodeDouble(*rf_keep_threshold)) : Json()},
        {"mi_threshold", EncodeDouble(mi_threshold)},
        {"mi_bins", mi_bins}}},
      {"smote", {{"enabled", smote.smote}, {"k", smote.smote_k}, {"ratio", EncodeDouble(smote.smote_ratio)}}},
      {"cv", {{"folds", cv_folds}}},
      {"models", models_json},
      {"primary_model", primary_model},
      {"evaluation", {{"min_sensitivity", EncodeDouble(min_sensitivity)}, {"n_boot", n_boot}}},
      {"interpret",
       {{"enabled", interpret},
        {"ablation_boot", ablation_boot},
        {"ale_bins", ale_bins},
        {"ale_features", ale_features}}},
      {"posterior",
       {{"group", posterior_group},
        {"sampler", posterior_sampler},
        {"draws", posterior_draws},
        {"chains", dream.chains},
        {"iterations", dream.iterations},
        {"burn_in", dream.burn_in}}},
  };
}

RunConfig RunConfig::FromJson(const Json& json) {
  RejectUnknown(json, "",
                {"seed", "output_dir", "data", "split", "selection", "smote", "cv", "models", "primary_model",
                 "evaluation", "interpret", "posterior"});
  RunConfig c;
  try {
    Get(json, "seed", c.seed);
    Get(json, "output_dir", c.output_dir);
    if (json.contains("data")) {
      const Json& d = json.at("data");
      RejectUnknown(d, "data", {"csv", "schema", "range_policy", "synthetic"});
      Get(d, "csv", c.data_csv);
      Get(d, "schema", c.schema_path);
      if (d.contains("range_policy")) {
        const std::string p = d.at("range_policy").get<std::string>();
        Check(p == "reject" || p == "clamp", "data.range_policy", "must be reject or clamp");
        c.range_policy = p == "reject" ? RangePolicy::kReject : RangePolicy::kClampWithWarning;
      }
      if (d.contains("synthetic")) {
        const Json& s = d.at("synthetic");
        RejectUnknown(s, "data.synthetic", {"n", "prevalence"});
        Get(s, "n", c.synthetic_n);
        GetDouble(s, "prevalence", c.synthetic_prevalence);
      }
    }
    if (json.contains("split")) {
      RejectUnknown(json.at("split"), "split", {"test_fraction"});
      GetDouble(json.at("split"), "test_fraction", c.test_fraction);
    }
    if (json.contains("selection")) {
      const Json& s = json.at("selection");
      RejectUnknown(s, "selection",
                    {"enabled", "rf_trees", "rf_max_depth", "rf_min_leaf", "rf_keep_threshold", "mi_threshold",
                     "mi_bins"});
      Get(s, "enabled", c.selection);
      Get(s, "rf_trees", c.forest.n_trees);
      Get(s, "rf_max_depth", c.forest.max_depth);
      Get(s, "rf_min_leaf", c.forest.min_leaf);
      if (s.contains("rf_keep_threshold") && !s.at("rf_keep_threshold").is_null()) {
        c.rf_keep_threshold = DecodeDouble(s.at("rf_keep_threshold"));
      }
      GetDouble(s, "mi_threshold", c.mi_threshold);
      Get(s, "mi_bins", c.mi_bins);
    }
    if (json.contains("smote")) {
      const Json& s = json.at("smote");
      RejectUnknown(s, "smote", {"enabled", "k", "ratio"});
      Get(s, "enabled", c.smote.smote);
      Get(s, "k", c.smote.smote_k);
      GetDouble(s, "ratio", c.smote.smote_ratio);
    }
    if (json.contains("cv")) {
      RejectUnknown(json.at("cv"), "cv", {"folds"});
      Get(json.at("cv"), "folds", c.cv_folds);
    }
    if (json.contains("models")) {
      const Json& m = json.at("models");
      if (!m.is_array()) throw Error(ErrorCode::kSchema, "config: models must be an array", "models");
      for (const auto& entry : m) c.models.push_back(ModelGridConfig::FromJson(entry, c.seed));
    } else {
      c.models = DefaultModelGrids(c.seed);
    }
    Get(json, "primary_model", c.primary_model);
    if (json.contains("evaluation")) {
      const Json& e = json.at("evaluation");
      RejectUnknown(e, "evaluation", {"min_sensitivity", "n_boot"});
      GetDouble(e, "min_sensitivity", c.min_sensitivity);
      Get(e, "n_boot", c.n_boot);
    }
    if (json.contains("interpret")) {
      const Json& i = json.at("interpret");
      RejectUnknown(i, "interpret", {"enabled", "ablation_boot", "ale_bins", "ale_features"});
      Get(i, "enabled", c.interpret);
      Get(i, "ablation_boot", c.ablation_boot);
      Get(i, "ale_bins", c.ale_bins);
      Get(i, "ale_features", c.ale_features);
    }
    if (json.contains("posterior")) {
      const Json& p = json.at("posterior");
      RejectUnknown(p, "posterior", {"group", "sampler", "draws", "chains", "iterations", "burn_in"});
      Get(p, "group", c.posterior_group);
      Get(p, "sampler", c.posterior_sampler);
      Get(p, "draws", c.posterior_draws);
      Get(p, "chains", c.dream.chains);
      Get(p, "iterations", c.dream.iterations);
      Get(p, "burn_in", c.dream.burn_in);
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kSchema, std::string("config: ") + e.what());
  }
  c.Validate();
  return c;
}

RunConfig RunConfig::Load(const std::filesystem::path& path) { return FromJson(ReadJsonFile(path)); }

}  // namespace hkdrisk
