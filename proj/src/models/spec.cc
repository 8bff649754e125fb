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

#include "hkdrisk/models/spec.h"

#include <cmath>
#include <cstdio>

#include "hkdrisk/common/error.h"

namespace hkdrisk {
namespace {

void Require(bool ok, const std::string& field, const std::string& rule) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, field + " " + rule, field);
}

std::string_view PenaltyName(Penalty p) { return p == Penalty::kL1 ? "l1" : "l2"; }

Penalty ParsePenalty(const std::string& s) {
  if (s == "l1") return Penalty::kL1;
  if (s == "l2") return Penalty::kL2;
  throw Error(ErrorCode::kSchema, "unknown penalty '" + s + "'", "penalty");
}

template <typename T>
void Read(const Json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

void ReadDouble(const Json& j, const char* key, double& out) {
  if (j.contains(key)) out = DecodeDouble(j.at(key));
}

Json ParamsToJson(const GbdtParams& p) {
  return {{"n_trees", p.n_trees},
          {"max_depth", p.max_depth},
          {"learning_rate", EncodeDouble(p.learning_rate)},
          {"reg_lambda", EncodeDouble(p.reg_lambda)},
          {"reg_alpha", EncodeDouble(p.reg_alpha)},
          {"min_child_weight", EncodeDouble(p.min_child_weight)},
          {"min_split_gain", EncodeDouble(p.min_split_gain)},
          {"subsample", EncodeDouble(p.subsample)},
          {"colsample", EncodeDouble(p.colsample)},
          {"histogram", p.histogram},
          {"max_bins", p.max_bins}};
}

Json ParamsToJson(const LogisticParams& p) {
  return {{"penalty", PenaltyName(p.penalty)},
          {"C", EncodeDouble(p.C)},
          {"tolerance", EncodeDouble(p.tolerance)},
          {"max_iter", p.max_iter}};
}

Json ParamsToJson(const NaiveBayesParams& p) {
  return {{"var_smoothing", EncodeDouble(p.var_smoothing)}, {"alpha", EncodeDouble(p.alpha)}};
}

Json ParamsToJson(const ShallowNnParams& p) {
  return {{"hidden", p.hidden},
          {"learning_rate", EncodeDouble(p.learning_rate)},
          {"dropout", EncodeDouble(p.dropout)},
          {"batch_size", p.batch_size},
          {"epochs", p.epochs},
          {"beta1", EncodeDouble(p.beta1)},
          {"beta2", EncodeDouble(p.beta2)},
          {"epsilon", EncodeDouble(p.epsilon)}};
}

FamilyParams ParamsFromJson(ModelFamily family, const Json& j) {
  switch (family) {
    case ModelFamily::kGbdt: {
      GbdtParams p;
      Read(j, "n_trees", p.n_trees);
      Read(j, "max_depth", p.max_depth);
      ReadDouble(j, "learning_rate", p.learning_rate);
      ReadDouble(j, "reg_lambda", p.reg_lambda);
      ReadDouble(j, "reg_alpha", p.reg_alpha);
      ReadDouble(j, "min_child_weight", p.min_child_weight);
      ReadDouble(j, "min_split_gain", p.min_split_gain);
      ReadDouble(j, "subsample", p.subsample);
      ReadDouble(j, "colsample", p.colsample);
      Read(j, "histogram", p.histogram);
      Read(j, "max_bins", p.max_bins);
      return p;
    }
    case ModelFamily::kLogistic: {
      LogisticParams p;
      if (j.contains("penalty")) p.penalty = ParsePenalty(j.at("penalty").get<std::string>());
      ReadDouble(j, "C", p.C);
      ReadDouble(j, "tolerance", p.tolerance);
      Read(j, "max_iter", p.max_iter);
      return p;
    }
    case ModelFamily::kNaiveBayes: {
      NaiveBayesParams p;
      ReadDouble(j, "var_smoothing", p.var_smoothing);
      ReadDouble(j, "alpha", p.alpha);
      return p;
    }
    case ModelFamily::kShallowNn: {
      ShallowNnParams p;
      Read(j, "hidden", p.hidden);
      ReadDouble(j, "learning_rate", p.learning_rate);
      ReadDouble(j, "dropout", p.dropout);
      Read(j, "batch_size", p.batch_size);
      Read(j, "epochs", p.epochs);
      ReadDouble(j, "beta1", p.beta1);
      ReadDouble(j, "beta2", p.beta2);
      ReadDouble(j, "epsilon", p.epsilon);
      return p;
    }
  }
  throw Error(ErrorCode::kSchema, "unknown model family");
}

std::string Fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

}  // namespace

std::string_view ModelFamilyName(ModelFamily family) {
  switch (family) {
    case ModelFamily::kGbdt: return "gbdt";
    case ModelFamily::kLogistic: return "logistic";
    case ModelFamily::kNaiveBayes: return "naive_bayes";
    case ModelFamily::kShallowNn: return "shallow_nn";
  }
  return "unknown";
}

ModelFamily ParseModelFamily(std::string_view name) {
  for (ModelFamily f : {ModelFamily::kGbdt, ModelFamily::kLogistic, ModelFamily::kNaiveBayes,
                        ModelFamily::kShallowNn}) {
    if (ModelFamilyName(f) == name) return f;
  }
  throw Error(ErrorCode::kSchema, "unknown model family '" + std::string(name) + "'", "family");
}

ModelFamily ClassifierSpec::family() const { return static_cast<ModelFamily>(params.index()); }

void ClassifierSpec::Validate() const {
  if (const auto* p = std::get_if<GbdtParams>(&params)) {
    Require(p->n_trees >= 0, "n_trees", "must be >= 0");
    Require(p->max_depth >= 1 && p->max_depth <= 16, "max_depth", "must lie in [1, 16]");
    Require(p->learning_rate > 0.0 && p->learning_rate <= 1.0, "learning_rate", "must lie in (0, 1]");
    Require(p->reg_lambda >= 0.0, "reg_lambda", "must be >= 0");
    Require(p->reg_alpha >= 0.0, "reg_alpha", "must be >= 0");
    Require(p->min_child_weight >= 0.0, "min_child_weight", "must be >= 0");
    Require(p->min_split_gain >= 0.0, "min_split_gain", "must be >= 0");
    Require(p->subsample > 0.0 && p->subsample <= 1.0, "subsample", "must lie in (0, 1]");
    Require(p->colsample > 0.0 && p->colsample <= 1.0, "colsample", "must lie in (0, 1]");
    Require(p->max_bins >= 2, "max_bins", "must be >= 2");
  } else if (const auto* p = std::get_if<LogisticParams>(&params)) {
    Require(p->C > 0.0 && std::isfinite(p->C), "C", "must be positive and finite");
    Require(p->tolerance > 0.0, "tolerance", "must be positive");
    Require(p->max_iter >= 1, "max_iter", "must be >= 1");
  } else if (const auto* p = std::get_if<NaiveBayesParams>(&params)) {
    Require(p->var_smoothing >= 0.0, "var_smoothing", "must be >= 0");
    Require(p->alpha > 0.0, "alpha", "must be positive");
  } else if (const auto* p = std::get_if<ShallowNnParams>(&params)) {
    Require(p->hidden >= 1, "hidden", "must be >= 1");
    Require(p->learning_rate > 0.0, "learning_rate", "must be positive");
    Require(p->dropout >= 0.0 && p->dropout < 1.0, "dropout", "must lie in [0, 1)");
    Require(p->batch_size >= 1, "batch_size", "must be >= 1");
    Require(p->epochs >= 1, "epochs", "must be >= 1");
    Require(p->beta1 >= 0.0 && p->beta1 < 1.0, "beta1", "must lie in [0, 1)");
    Require(p->beta2 >= 0.0 && p->beta2 < 1.0, "beta2", "must lie in [0, 1)");
    Require(p->epsilon > 0.0, "epsilon", "must be positive");
  }
}

Json ClassifierSpec::ToJson() const {
  Json j;
  j["name"] = name;
  j["family"] = ModelFamilyName(family());
  j["seed"] = seed;
  j["params"] = std::visit([](const auto& p) { return ParamsToJson(p); }, params);
  return j;
}

ClassifierSpec ClassifierSpec::FromJson(const Json& json) {
  ClassifierSpec s;
  const ModelFamily family = ParseModelFamily(RequireMember(json, "family").get<std::string>());
  s.name = json.value("name", std::string(ModelFamilyName(family)));
  s.seed = json.value("seed", std::uint64_t{0});
  s.params = ParamsFromJson(family, json.contains("params") ? json.at("params") : Json::object());
  s.Validate();
  return s;
}

std::string ClassifierSpec::Describe() const {
  if (const auto* p = std::get_if<GbdtParams>(&params)) {
    return "trees=" + std::to_string(p->n_trees) + " depth=" + std::to_string(p->max_depth) +
           Fmt(" eta=%g", p->learning_rate) + Fmt(" lambda=%g", p->reg_lambda) +
           Fmt(" alpha=%g", p->reg_alpha) + Fmt(" subsample=%g", p->subsample) +
           Fmt(" colsample=%g", p->colsample) + (p->histogram ? " hist" : " exact");
  }
  if (const auto* p = std::get_if<LogisticParams>(&params)) {
    return std::string(PenaltyName(p->penalty)) + Fmt(" C=%g", p->C);
  }
  if (const auto* p = std::get_if<NaiveBayesParams>(&params)) {
    return Fmt("var_smoothing=%g", p->var_smoothing) + Fmt(" alpha=%g", p->alpha);
  }
  const auto& p = std::get<ShallowNnParams>(params);
  return "hidden=" + std::to_string(p.hidden) + Fmt(" lr=%g", p.learning_rate) +
         Fmt(" dropout=%g", p.dropout) + " batch=" + std::to_string(p.batch_size) +
         " epochs=" + std::to_string(p.epochs);
}

ClassifierSpec CatBoostLike(std::uint64_t seed) {
  GbdtParams p;
  p.max_depth = 6;
  p.learning_rate = 0.03;
  p.n_trees = 500;
  p.reg_lambda = 3.0;
  return {"catboost", p, seed};
}

ClassifierSpec LightGbmLike(std::uint64_t seed) {
  GbdtParams p;
  p.max_depth = 6;
  p.learning_rate = 0.1;
  p.n_trees = 200;
  p.reg_lambda = 1.0;
  p.reg_alpha = 0.1;
  p.subsample = 0.8;
  p.colsample = 0.8;
  p.min_child_weight = 1e-3;
  return {"lightgbm", p, seed};
}

ClassifierSpec XgBoostLike(std::uint64_t seed) {
  GbdtParams p;
  p.max_depth = 6;
  p.learning_rate = 0.1;
  p.n_trees = 200;
  p.reg_lambda = 1.0;
  p.histogram = false;
  return {"xgboost", p, seed};
}

ClassifierSpec LogisticBaseline(std::uint64_t seed) { return {"logistic", LogisticParams{}, seed}; }
ClassifierSpec NaiveBayesBaseline(std::uint64_t seed) { return {"naive_bayes", NaiveBayesParams{}, seed}; }
ClassifierSpec ShallowNnBaseline(std::uint64_t seed) { return {"shallow_nn", ShallowNnParams{}, seed}; }

std::vector<ClassifierSpec> ExpandGrid(const ClassifierSpec& base, const GbdtLattice& lattice) {
  const auto& b = std::get<GbdtParams>(base.params);
  std::vector<ClassifierSpec> out;
  for (int depth : lattice.max_depth) {
    for (double eta : lattice.learning_rate) {
      for (int trees : lattice.n_trees) {
        for (double lambda : lattice.reg_lambda) {
          GbdtParams p = b;
          p.max_depth = depth;
          p.learning_rate = eta;
          p.n_trees = trees;
          p.reg_lambda = lambda;
          out.push_back({base.name, p, base.seed});
        }
      }
    }
  }
  return out;
}

std::vector<ClassifierSpec> ExpandGrid(const ClassifierSpec& base, const LogisticLattice& lattice) {
  const auto& b = std::get<LogisticParams>(base.params);
  std::vector<ClassifierSpec> out;
  for (double c : lattice.C) {
    for (Penalty pen : lattice.penalty) {
      LogisticParams p = b;
      p.C = c;
      p.penalty = pen;
      out.push_back({base.name, p, base.seed});
    }
  }
  return out;
}

std::vector<ClassifierSpec> ExpandGrid(const ClassifierSpec& base, const ShallowNnLattice& lattice) {
  const auto& b = std::get<ShallowNnParams>(base.params);
  std::vector<ClassifierSpec> out;
  for (int h : lattice.hidden) {
    for (double d : lattice.dropout) {
      ShallowNnParams p = b;
      p.hidden = h;
      p.dropout = d;
      out.push_back({base.name, p, base.seed});
    }
  }
  return out;
}

std::vector<double> ComplexityKey(const ClassifierSpec& spec) {
  if (const auto* p = std::get_if<GbdtParams>(&spec.params)) {
    return {static_cast<double>(p->n_trees), static_cast<double>(p->max_depth), -p->reg_lambda,
            -p->reg_alpha};
  }
  if (const auto* p = std::get_if<LogisticParams>(&spec.params)) {
    return {p->C};
  }
  if (const auto* p = std::get_if<ShallowNnParams>(&spec.params)) {
    return {static_cast<double>(p->hidden), -p->dropout};
  }
  return {};
}

}  // namespace hkdrisk
