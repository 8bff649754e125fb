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

#include "hkdrisk/posterior/prior.h"

#include <cmath>
#include <limits>
#include <set>

#include "hkdrisk/cohort/truncated_normal.h"
#include "hkdrisk/common/error.h"

namespace hkdrisk {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

TruncatedNormal AsTruncated(const FeaturePrior& p) { return {p.mu, p.sigma, p.lo, p.hi}; }

void Require(bool ok, const FeaturePrior& p, const std::string& rule) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, "prior for '" + p.feature + "': " + rule, p.feature);
}

// Bounds travel as decimal strings, infinities included.
Json Bound(double v) { return EncodeDouble(v); }

}  // namespace

std::string_view PriorKindName(PriorKind kind) {
  switch (kind) {
    case PriorKind::kTruncatedNormal: return "truncated_normal";
    case PriorKind::kBernoulli: return "bernoulli";
    case PriorKind::kPoint: return "point";
  }
  return "unknown";
}

double FeaturePrior::LogDensity(double x) const {
  switch (kind) {
    case PriorKind::kTruncatedNormal:
      return AsTruncated(*this).LogDensity(x);
    case PriorKind::kBernoulli:
      if (x == 1.0) return std::log(rate);
      if (x == 0.0) return std::log1p(-rate);
      return -kInf;
    case PriorKind::kPoint:
      return x == value ? 0.0 : -kInf;
  }
  return -kInf;
}

double FeaturePrior::Sample(Rng& rng) const {
  switch (kind) {
    case PriorKind::kTruncatedNormal: return AsTruncated(*this).Sample(rng);
    case PriorKind::kBernoulli: return Uniform01(rng) < rate ? 1.0 : 0.0;
    case PriorKind::kPoint: return value;
  }
  return value;
}

double FeaturePrior::Scale() const { return kind == PriorKind::kTruncatedNormal ? sigma : 0.0; }

void PriorSpec::Validate() const {
  std::set<std::string> seen;
  for (const auto& p : features) {
    if (!seen.insert(p.feature).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate prior for '" + p.feature + "'", p.feature);
    }
    switch (p.kind) {
      case PriorKind::kTruncatedNormal:
        Require(std::isfinite(p.mu), p, "mu must be finite");
        Require(std::isfinite(p.sigma) && p.sigma > 0.0, p, "sigma must be positive (use a point prior for 0)");
        Require(!std::isnan(p.lo) && !std::isnan(p.hi) && p.lo < p.hi, p, "bounds must satisfy lo < hi");
        Require(AsTruncated(p).Mass() > 0.0, p, "no probability mass inside the bounds");
        break;
      case PriorKind::kBernoulli:
        Require(p.rate >= 0.0 && p.rate <= 1.0, p, "rate must lie in [0, 1]");
        break;
      case PriorKind::kPoint:
        Require(std::isfinite(p.value), p, "value must be finite");
        break;
    }
  }
}

PriorSpec PriorSpec::AlignTo(const std::vector<std::string>& names) const {
  PriorSpec out;
  out.provenance = provenance;
  for (const auto& name : names) {
    const FeaturePrior* found = nullptr;
    for (const auto& p : features) {
      if (p.feature == name) found = &p;
    }
    if (!found) throw Error(ErrorCode::kInvalidArgument, "prior does not cover feature '" + name + "'", name);
    out.features.push_back(*found);
  }
  return out;
}

double PriorSpec::LogDensity(std::span<const double> x) const {
  double s = 0.0;
  for (std::size_t j = 0; j < features.size(); ++j) s += features[j].LogDensity(x[j]);
  return s;
}

std::vector<double> PriorSpec::Sample(Rng& rng) const {
  std::vector<double> x(features.size());
  for (std::size_t j = 0; j < features.size(); ++j) x[j] = features[j].Sample(rng);
  return x;
}

bool PriorSpec::all_point() const {
  for (const auto& p : features) {
    if (p.kind != PriorKind::kPoint) return false;
  }
  return true;
}

Json PriorSpec::ToJson() const {
  Json list = Json::array();
  for (const auto& p : features) {
    Json j{{"feature", p.feature}, {"distribution", PriorKindName(p.kind)}};
    switch (p.kind) {
      case PriorKind::kTruncatedNormal:
        j["mu"] = EncodeDouble(p.mu);
        j["sigma"] = EncodeDouble(p.sigma);
        j["lo"] = Bound(p.lo);
        j["hi"] = Bound(p.hi);
        break;
      case PriorKind::kBernoulli:
        j["rate"] = EncodeDouble(p.rate);
        break;
      case PriorKind::kPoint:
        j["value"] = EncodeDouble(p.value);
        break;
    }
    list.push_back(std::move(j));
  }
  return {{"provenance", provenance}, {"features", list}};
}

PriorSpec PriorSpec::FromJson(const Json& json) {
  PriorSpec spec;
  spec.provenance = json.value("provenance", std::string("custom"));
  if (json.contains("correlation") && !json.at("correlation").is_null()) {
    throw Error(ErrorCode::kInvalidArgument, "correlated priors are not supported; coordinates are independent",
                "correlation");
  }
  for (const auto& j : RequireMember(json, "features")) {
    FeaturePrior p;
    p.feature = RequireMember(j, "feature").get<std::string>();
    const std::string dist = RequireMember(j, "distribution").get<std::string>();
    auto num = [&](const char* key) {
      try {
        return DecodeDouble(RequireMember(j, key));
      } catch (const Error&) {
        throw;
      } catch (const std::exception&) {
        throw Error(ErrorCode::kInvalidArgument, "prior for '" + p.feature + "': " + key + " is not numeric",
                    p.feature);
      }
    };
    if (dist == "truncated_normal" || dist == "normal") {
      p.kind = PriorKind::kTruncatedNormal;
      p.mu = num("mu");
      p.sigma = num("sigma");
      p.lo = j.contains("lo") ? num("lo") : -kInf;
      p.hi = j.contains("hi") ? num("hi") : kInf;
    } else if (dist == "bernoulli") {
      p.kind = PriorKind::kBernoulli;
      p.rate = num("rate");
    } else if (dist == "point") {
      p.kind = PriorKind::kPoint;
      p.value = num("value");
    } else {
      throw Error(ErrorCode::kInvalidArgument, "unknown prior distribution '" + dist + "'", p.feature);
    }
    spec.features.push_back(p);
  }
  spec.Validate();
  return spec;
}

PriorSpec BuildPrior(const GroupStats& stats, std::string_view group, const FeatureSchema& schema) {
  const GroupSummary& summary = stats.Require(group);
  PriorSpec spec;
  spec.provenance = std::string(group);
  for (const auto& def : schema.features()) {
    const auto idx = stats.schema().IndexOf(def.name);
    if (!idx || !summary.features[*idx]) {
      throw Error(ErrorCode::kNotFound,
                  "group '" + std::string(group) + "' has no statistics for '" + def.name + "'", def.name);
    }
    const FeatureStat& st = *summary.features[*idx];
    FeaturePrior p;
    p.feature = def.name;
    if (def.kind == FeatureKind::kBinary) {
      p.kind = PriorKind::kBernoulli;
      p.rate = st.mean;
    } else if (st.sd == 0.0) {
      p.kind = PriorKind::kPoint;
      p.value = st.mean;
    } else {
      p.kind = PriorKind::kTruncatedNormal;
      p.mu = st.mean;
      p.sigma = st.sd;
      p.lo = def.valid_range ? def.valid_range->lo : -kInf;
      p.hi = def.valid_range ? def.valid_range->hi : kInf;
    }
    spec.features.push_back(p);
  }
  spec.Validate();
  return spec;
}

PriorSpec PointPrior(const FeatureSchema& schema, std::span<const double> values) {
  if (values.size() != schema.size()) throw Error(ErrorCode::kInvalidArgument, "point prior length mismatch");
  PriorSpec spec;
  spec.provenance = "point";
  for (std::size_t j = 0; j < values.size(); ++j) {
    FeaturePrior p;
    p.feature = schema.feature(j).name;
    p.kind = PriorKind::kPoint;
    p.value = values[j];
    spec.features.push_back(p);
  }
  spec.Validate();
  return spec;
}

}  // namespace hkdrisk
