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

#include "hkdrisk/evaluate/metrics.h"

#include "hkdrisk/common/error.h"

namespace hkdrisk {
namespace {

double Ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

Json OptionalJson(const std::optional<double>& v) {
  return v ? Json(EncodeDouble(*v)) : Json(nullptr);
}

std::optional<double> OptionalFromJson(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return DecodeDouble(j.at(key));
}

}  // namespace

ConfusionCounts CountConfusion(const ScoredSet& scored, double threshold) {
  ConfusionCounts c;
  for (std::size_t i = 0; i < scored.size(); ++i) {
    const bool predicted = scored.scores[i] >= threshold;
    if (scored.labels[i] == 1) {
      (predicted ? c.tp : c.fn) += 1;
    } else {
      (predicted ? c.fp : c.tn) += 1;
    }
  }
  return c;
}

MetricsRow MetricsFromCounts(const ConfusionCounts& c, double threshold) {
  MetricsRow m;
  m.threshold = threshold;
  m.counts = c;
  const std::size_t n = c.tp + c.fp + c.tn + c.fn;
  m.accuracy = Ratio(c.tp + c.tn, n);
  m.sensitivity = Ratio(c.tp, c.tp + c.fn);
  m.specificity = Ratio(c.tn, c.tn + c.fp);
  m.f1 = Ratio(2 * c.tp, 2 * c.tp + c.fp + c.fn);
  if (c.tp + c.fp > 0) m.ppv = Ratio(c.tp, c.tp + c.fp);
  if (c.tn + c.fn > 0) m.npv = Ratio(c.tn, c.tn + c.fn);
  return m;
}

MetricsRow ConfusionMetrics(const ScoredSet& scored, double threshold) {
  scored.Validate(false);
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "threshold must lie in [0, 1]");
  }
  return MetricsFromCounts(CountConfusion(scored, threshold), threshold);
}

Json MetricsRow::ToJson() const {
  Json j;
  j["auroc"] = OptionalJson(auroc);
  j["auroc_ci_lo"] = OptionalJson(auroc_lo);
  j["auroc_ci_hi"] = OptionalJson(auroc_hi);
  j["accuracy"] = EncodeDouble(accuracy);
  j["f1"] = EncodeDouble(f1);
  j["sensitivity"] = EncodeDouble(sensitivity);
  j["specificity"] = EncodeDouble(specificity);
  j["ppv"] = ppv ? Json(EncodeDouble(*ppv)) : Json("n/a");
  j["npv"] = npv ? Json(EncodeDouble(*npv)) : Json("n/a");
  j["threshold"] = EncodeDouble(threshold);
  j["confusion"] = {{"tp", counts.tp}, {"fp", counts.fp}, {"tn", counts.tn}, {"fn", counts.fn}};
  return j;
}

MetricsRow MetricsRow::FromJson(const Json& j) {
  MetricsRow m;
  m.auroc = OptionalFromJson(j, "auroc");
  m.auroc_lo = OptionalFromJson(j, "auroc_ci_lo");
  m.auroc_hi = OptionalFromJson(j, "auroc_ci_hi");
  m.accuracy = DecodeDouble(RequireMember(j, "accuracy"));
  m.f1 = DecodeDouble(RequireMember(j, "f1"));
  m.sensitivity = DecodeDouble(RequireMember(j, "sensitivity"));
  m.specificity = DecodeDouble(RequireMember(j, "specificity"));
  for (auto [key, slot] : {std::pair{"ppv", &m.ppv}, std::pair{"npv", &m.npv}}) {
    const Json& v = RequireMember(j, key);
    if (!(v.is_string() && v.get<std::string>() == "n/a")) *slot = DecodeDouble(v);
  }
  m.threshold = DecodeDouble(RequireMember(j, "threshold"));
  const Json& c = RequireMember(j, "confusion");
  m.counts = {c.at("tp").get<std::size_t>(), c.at("fp").get<std::size_t>(),
              c.at("tn").get<std::size_t>(), c.at("fn").get<std::size_t>()};
  return m;
}

}  // namespace hkdrisk
