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

#include "hkdrisk/service/handlers.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "hkdrisk/cohort/group_stats.h"
#include "hkdrisk/models/classifier.h"
#include "hkdrisk/posterior/prior.h"
#include "hkdrisk/posterior/sampler.h"
#include "hkdrisk/posterior/summary.h"
#include "hkdrisk/service/pipeline.h"

namespace hkdrisk {
namespace {

void RejectUnknownKeys(const Json& body, const std::set<std::string>& known) {
  if (!body.is_object()) throw Error(ErrorCode::kSchema, "request body must be a JSON object");
  for (const auto& [key, value] : body.items()) {
    if (!known.count(key)) throw Error(ErrorCode::kSchema, "unknown request field \"" + key + "\"", key);
  }
}

std::string JoinNames(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : ", ") + n;
  return out;
}

int IntField(const Json& body, const char* key, int fallback) {
  if (!body.contains(key)) return fallback;
  const Json& v = body.at(key);
  if (!v.is_number_integer()) throw Error(ErrorCode::kParse, std::string(key) + " must be an integer", key);
  return v.get<int>();
}

}  // namespace

int HttpStatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSchema:
    case ErrorCode::kParse:
    case ErrorCode::kRange:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kStratification:
    case ErrorCode::kUnsupportedVersion:
      return 400;
    case ErrorCode::kNotFound:
      return 404;
    case ErrorCode::kCalibration:
    case ErrorCode::kNumeric:
    case ErrorCode::kDivergence:
      return 422;
    case ErrorCode::kIntegrity:
    case ErrorCode::kPipeline:
      return 500;
  }
  return 500;
}

Json ErrorBody(const Error& error, const std::string& bundle_hash) {
  Json body{{"code", ErrorCodeName(error.code())}, {"message", error.what()}};
  if (!error.field().empty()) body["field"] = error.field();
  if (!bundle_hash.empty()) body["bundle_hash"] = bundle_hash;
  return body;
}

PredictRequest PredictRequest::FromJson(const Json& body, const ModelBundle& bundle) {
  RejectUnknownKeys(body, {"features"});
  const FeatureSchema& schema = bundle.schema();
  const auto selected = bundle.selected_features();
  PredictRequest req;
  req.values.assign(selected.size(), kMissing);
  std::vector<bool> given(selected.size(), false);
  if (body.contains("features")) {
    const Json& features = body.at("features");
    if (!features.is_object()) throw Error(ErrorCode::kSchema, "\"features\" must be an object", "features");
    for (const auto& [name, value] : features.items()) {
      const auto index = schema.IndexOf(name);
      if (!index) {
        throw Error(ErrorCode::kSchema, "unknown feature '" + name + "'; valid names: " + JoinNames(schema.names()),
                    name);
      }
      if (!value.is_null() && !value.is_number()) {
        throw Error(ErrorCode::kParse, "feature '" + name + "' must be a number or null, got " + value.dump(), name);
      }
      const auto pos = std::find(selected.begin(), selected.end(), name);
      if (pos == selected.end()) {
        req.ignored.push_back(name);
        continue;
      }
      if (value.is_null()) continue;
      const double v = value.get<double>();
      const FeatureDef& def = schema.feature(*index);
      if (def.kind == FeatureKind::kBinary && v != 0.0 && v != 1.0) {
        throw Error(ErrorCode::kRange, "binary feature '" + name + "' must be 0 or 1", name);
      }
      if (def.valid_range && (v < def.valid_range->lo || v > def.valid_range->hi)) {
        throw Error(ErrorCode::kRange,
                    "feature '" + name + "' = " + EncodeDouble(v) + " outside [" + EncodeDouble(def.valid_range->lo) +
                        ", " + EncodeDouble(def.valid_range->hi) + "]",
                    name);
      }
      const auto j = static_cast<std::size_t>(pos - selected.begin());
      req.values[j] = v;
      given[j] = true;
    }
  }
  for (std::size_t j = 0; j < selected.size(); ++j) {
    if (!given[j]) req.imputed.push_back(selected[j]);
  }
  std::sort(req.ignored.begin(), req.ignored.end());
  return req;
}

Json PredictResponse::ToJson() const {
  return {{"bundle_hash", bundle_hash}, {"risk", risk},       {"threshold", threshold},
          {"label", label},             {"imputed", imputed}, {"ignored", ignored}};
}

PredictResponse HandlePredict(const Json& body, const ModelBundle& bundle) {
  const PredictRequest req = PredictRequest::FromJson(body, bundle);
  PredictResponse resp;
  resp.bundle_hash = bundle.hash();
  resp.risk = bundle.PredictProba(req.values);
  resp.threshold = bundle.threshold();
  resp.label = resp.risk >= resp.threshold ? 1 : 0;
  resp.imputed = req.imputed;
  resp.ignored = req.ignored;
  return resp;
}

Json HandleExplain(const Json& body, const ModelBundle& bundle) {
  const PredictRequest req = PredictRequest::FromJson(body, bundle);
  const ShapAttribution a = ExplainRow(bundle, req.values);
  std::vector<double> filled = req.values;
  const auto& fill = bundle.pipeline().imputation().fill;
  for (std::size_t j = 0; j < filled.size(); ++j) {
    if (IsMissing(filled[j])) filled[j] = fill[j];
  }
  Json contributions = Json::array();
  for (std::size_t j = 0; j < a.phi.size(); ++j) {
    contributions.push_back({{"feature", a.features[j]}, {"phi", a.phi[j]}, {"value", filled[j]}});
  }
  const double risk = Sigmoid(a.output);
  return {{"bundle_hash", bundle.hash()},
          {"space", ShapSpaceName(a.space)},
          {"base", a.base},
          {"output", a.output},
          {"risk", risk},
          {"threshold", bundle.threshold()},
          {"label", risk >= bundle.threshold() ? 1 : 0},
          {"contributions", contributions},
          {"imputed", req.imputed}};
}

Json HandlePosterior(const Json& body, const ModelBundle& bundle) {
  RejectUnknownKeys(body, {"group", "stats", "prior", "features", "sampler", "draws", "seed", "chains", "iterations",
                           "burn_in", "cutoffs"});
  const int sources = body.contains("group") + body.contains("prior") + body.contains("features");
  if (sources != 1) {
    throw Error(ErrorCode::kInvalidArgument, "give exactly one of \"group\", \"prior\" or \"features\"");
  }
  PriorSpec prior;
  std::string source;
  if (body.contains("group")) {
    if (!body.at("group").is_string()) throw Error(ErrorCode::kParse, "group must be a string", "group");
    const std::string group = body.at("group").get<std::string>();
    if (group != kSurvivorGroup && group != kNonSurvivorGroup) {
      throw Error(ErrorCode::kInvalidArgument, "group must be survivor or non_survivor", "group");
    }
    std::string stats = bundle.group_stats() ? "bundle" : "published";
    if (body.contains("stats")) stats = body.at("stats").get<std::string>();
    if (stats == "bundle") {
      if (!bundle.group_stats()) throw Error(ErrorCode::kNotFound, "bundle carries no group statistics", "stats");
      prior = BuildPrior(*bundle.group_stats(), group, bundle.schema());
    } else if (stats == "published") {
      prior = BuildPrior(PublishedOutcomeStats(), group, DefaultHkdSchema());
    } else {
      throw Error(ErrorCode::kInvalidArgument, "stats must be bundle or published", "stats");
    }
    source = group + " (" + stats + ")";
  } else if (body.contains("prior")) {
    try {
      prior = PriorSpec::FromJson(body.at("prior"));
    } catch (const Json::exception& e) {
      throw Error(ErrorCode::kSchema, std::string("invalid prior: ") + e.what(), "prior");
    }
    source = prior.provenance.empty() ? "custom" : prior.provenance;
  } else {
    const PredictRequest req = PredictRequest::FromJson({{"features", body.at("features")}}, bundle);
    std::vector<double> filled = req.values;
    const auto& fill = bundle.pipeline().imputation().fill;
    for (std::size_t j = 0; j < filled.size(); ++j) {
      if (IsMissing(filled[j])) filled[j] = fill[j];
    }
    prior = PointPrior(bundle.pipeline().schema(), filled);
    source = "point";
  }
  prior = prior.AlignTo(bundle.selected_features());

  const std::string sampler = body.value("sampler", std::string("mc"));
  const auto seed = body.contains("seed") ? body.at("seed").get<std::uint64_t>() : std::uint64_t{0};
  std::vector<double> cutoffs = DefaultRiskCutoffs();
  if (body.contains("cutoffs")) cutoffs = DecodeDoubles(body.at("cutoffs"));
  for (double c : cutoffs) {
    if (!(c >= 0.0 && c <= 1.0)) throw Error(ErrorCode::kRange, "cutoffs must lie in [0, 1]", "cutoffs");
  }
  RiskPosterior posterior;
  if (sampler == "mc") {
    const int draws = IntField(body, "draws", 10000);
    if (draws < kMinPosteriorDraws || draws > kMaxServiceDraws) {
      throw Error(ErrorCode::kRange, "draws must lie in [100, " + std::to_string(kMaxServiceDraws) + "]", "draws");
    }
    posterior = SamplePosteriorMc(bundle, prior, draws, seed);
  } else if (sampler == "dream") {
    DreamOptions opt;
    opt.seed = seed;
    opt.chains = IntField(body, "chains", opt.chains);
    opt.iterations = IntField(body, "iterations", opt.iterations);
    opt.burn_in = IntField(body, "burn_in", opt.burn_in);
    if (static_cast<long>(opt.chains) * opt.iterations > kMaxServiceDreamSteps) {
      throw Error(ErrorCode::kRange, "chains * iterations must not exceed " + std::to_string(kMaxServiceDreamSteps),
                  "iterations");
    }
    posterior = SamplePosteriorDream(bundle, prior, opt);
  } else {
    throw Error(ErrorCode::kInvalidArgument, "sampler must be mc or dream", "sampler");
  }
  return {{"bundle_hash", bundle.hash()},
          {"source", source},
          {"sampler", sampler},
          {"prior", prior.ToJson()},
          {"summary", SummarizePosterior(posterior, cutoffs).ToJson()},
          {"diagnostics", posterior.DiagnosticsJson()}};
}

Json HandleSchema(const ModelBundle& bundle) {
  const auto selected = bundle.selected_features();
  const auto& fill = bundle.pipeline().imputation().fill;
  Json defaults = Json::object();
  for (std::size_t j = 0; j < selected.size(); ++j) defaults[selected[j]] = fill[j];
  return {{"bundle_hash", bundle.hash()},
          {"schema", bundle.schema().ToJson()},
          {"selected_features", selected},
          {"imputation_defaults", defaults},
          {"threshold", bundle.threshold()}};
}

Json HandleModel(const ModelBundle& bundle) {
  const BundleMetadata& meta = bundle.metadata();
  return {{"bundle_hash", bundle.hash()},
          {"format_version", kBundleFormatVersion},
          {"spec", bundle.pipeline().spec().ToJson()},
          {"threshold", bundle.threshold()},
          {"selected_features", bundle.selected_features()},
          {"training_lineage", bundle.pipeline().training_lineage()},
          {"metadata", {{"seed", meta.seed}, {"created", meta.created}, {"data_hash", meta.data_hash}, {"extra", meta.extra}}},
          {"has_group_stats", bundle.group_stats().has_value()}};
}

}  // namespace hkdrisk
