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

#ifndef HKDRISK_POSTERIOR_PRIOR_H_
#define HKDRISK_POSTERIOR_PRIOR_H_

#include <string>
#include <string_view>
#include <vector>

#include "hkdrisk/cohort/group_stats.h"
#include "hkdrisk/cohort/schema.h"
#include "hkdrisk/common/random.h"

namespace hkdrisk {

enum class PriorKind { kTruncatedNormal, kBernoulli, kPoint };
std::string_view PriorKindName(PriorKind kind);

struct FeaturePrior {
  std::string feature;
  PriorKind kind = PriorKind::kPoint;
  // Truncated normal: parent (mu, sigma) restricted to [lo, hi].
  double mu = 0.0;
  double sigma = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double rate = 0.0;   // Bernoulli
  double value = 0.0;  // point

  // Log density (mass for Bernoulli); -inf off the support. Point priors
  // return 0 at their value.
  double LogDensity(double x) const;
  double Sample(Rng& rng) const;
  // Scale used for sampler jitter; 0 for discrete and point priors.
  double Scale() const;
  bool operator==(const FeaturePrior&) const = default;
};

// Independent per-feature priors. `provenance` names the group the
// parameters came from ("non_survivor", "custom", ...).
struct PriorSpec {
  std::vector<FeaturePrior> features;
  std::string provenance;

  // Throws kInvalidArgument naming the feature: sigma < 0, lo > hi, rates
  // outside [0, 1], non-finite parameters, duplicate features.
  void Validate() const;
  // Reordered to `names`; throws kInvalidArgument naming a missing feature.
  PriorSpec AlignTo(const std::vector<std::string>& names) const;
  double LogDensity(std::span<const double> x) const;
  std::vector<double> Sample(Rng& rng) const;
  // Every feature fixed at a value.
  bool all_point() const;

  Json ToJson() const;
  static PriorSpec FromJson(const Json& json);
  bool operator==(const PriorSpec&) const = default;
};

// Continuous features: truncated normal at the group's (mean, sd) over the
// feature's valid range (unbounded without one). Binary features: Bernoulli
// at the group rate. Zero sd gives a point prior at the mean. Throws
// kNotFound for an absent group or a feature without statistics.
PriorSpec BuildPrior(const GroupStats& stats, std::string_view group, const FeatureSchema& schema);

// Point prior at `values` (aligned with `schema`).
PriorSpec PointPrior(const FeatureSchema& schema, std::span<const double> values);

}  // namespace hkdrisk

#endif  // HKDRISK_POSTERIOR_PRIOR_H_
