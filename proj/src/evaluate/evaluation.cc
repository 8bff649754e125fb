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

#include "hkdrisk/evaluate/evaluation.h"

#include <sstream>

namespace hkdrisk {
namespace {

std::string OptionalCsv(const std::optional<double>& v) { return v ? EncodeDouble(*v) : "n/a"; }

}  // namespace

ModelEvaluation EvaluateScoredSet(const std::string& model, const ScoredSet& scored,
                                  const EvaluationOptions& options) {
  scored.Validate(true);
  ModelEvaluation e;
  e.model = model;
  e.n = scored.size();
  e.positives = scored.positives();
  const double threshold = options.fixed_threshold
                               ? *options.fixed_threshold
                               : SelectThreshold(scored, options.min_sensitivity).threshold;
  e.metrics = ConfusionMetrics(scored, threshold);
  e.metrics.auroc = RocAuc(scored);
  e.ci = BootstrapAucCi(scored, options.n_boot, options.seed);
  e.metrics.auroc_lo = e.ci.lo;
  e.metrics.auroc_hi = e.ci.hi;
  e.roc = RocCurve(scored);
  return e;
}

Json ModelEvaluation::ToJson() const {
  Json j;
  j["model"] = model;
  j["n"] = n;
  j["positives"] = positives;
  j["prevalence"] = EncodeDouble(prevalence());
  j["metrics"] = metrics.ToJson();
  j["bootstrap"] = {{"n_boot", ci.n_boot},     {"seed", ci.seed},
                    {"level", EncodeDouble(ci.level)}, {"method", ci.method},
                    {"lo", EncodeDouble(ci.lo)}, {"hi", EncodeDouble(ci.hi)}};
  Json roc_points = Json::array();
  for (const auto& p : roc) {
    roc_points.push_back({{"threshold", EncodeDouble(p.threshold)},
                          {"fpr", EncodeDouble(p.fpr)},
                          {"tpr", EncodeDouble(p.tpr)}});
  }
  j["roc"] = std::move(roc_points);
  return j;
}

Json EvaluationReport::ToJson() const {
  Json j;
  j["models"] = Json::array();
  for (const auto& m : models) j["models"].push_back(m.ToJson());
  j["comparisons"] = Json::array();
  for (const auto& c : comparisons) {
    Json entry = c.table.ToJson();
    entry["name"] = c.name;
    j["comparisons"].push_back(std::move(entry));
  }
  return j;
}

std::string EvaluationReport::MetricsCsv() const {
  std::ostringstream out;
  out << "model,n,positives,auroc,auroc_ci_lo,auroc_ci_hi,accuracy,f1,sensitivity,specificity,"
         "ppv,npv,threshold\n";
  for (const auto& m : models) {
    const MetricsRow& r = m.metrics;
    out << m.model << ',' << m.n << ',' << m.positives << ',' << OptionalCsv(r.auroc) << ','
        << OptionalCsv(r.auroc_lo) << ',' << OptionalCsv(r.auroc_hi) << ','
        << EncodeDouble(r.accuracy) << ',' << EncodeDouble(r.f1) << ','
        << EncodeDouble(r.sensitivity) << ',' << EncodeDouble(r.specificity) << ','
        << OptionalCsv(r.ppv) << ',' << OptionalCsv(r.npv) << ',' << EncodeDouble(r.threshold)
        << '\n';
  }
  return out.str();
}

std::string EvaluationReport::RocCsv() const {
  std::ostringstream out;
  out << "model,threshold,fpr,tpr\n";
  for (const auto& m : models) {
    for (const auto& p : m.roc) {
      out << m.model << ',' << EncodeDouble(p.threshold) << ',' << EncodeDouble(p.fpr) << ','
          << EncodeDouble(p.tpr) << '\n';
    }
  }
  return out.str();
}

}  // namespace hkdrisk
