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

#include "hkdrisk/cohort/synthetic.h"

#include <array>
#include <cstdio>
#include <limits>

#include "hkdrisk/common/error.h"
#include "hkdrisk/common/random.h"

namespace hkdrisk {

TruncatedNormal CalibratedFeatureDistribution(const FeatureDef& def, const FeatureStat& stat) {
  const double lo = def.valid_range ? def.valid_range->lo : -std::numeric_limits<double>::infinity();
  const double hi = def.valid_range ? def.valid_range->hi : std::numeric_limits<double>::infinity();
  return MatchTruncatedMoments(stat.mean, stat.sd, lo, hi);
}

Cohort GenerateSyntheticCohort(const GroupStats& stats, std::size_t n, double prevalence,
                               std::uint64_t seed) {
  if (!(prevalence > 0.0 && prevalence < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "prevalence must lie in (0, 1)");
  }
  const FeatureSchema& schema = stats.schema();
  const std::array<const GroupSummary*, 2> groups = {stats.Find(kSurvivorGroup),
                                                     stats.Find(kNonSurvivorGroup)};
  for (const auto* g : groups) {
    if (!g) throw Error(ErrorCode::kCalibration, "stats lack a survivor or non_survivor group");
  }

  const std::size_t d = schema.size();
  std::array<std::vector<TruncatedNormal>, 2> continuous;
  std::array<std::vector<double>, 2> rates;
  for (int label = 0; label < 2; ++label) {
    continuous[label].resize(d);
    rates[label].resize(d, 0.0);
    for (std::size_t j = 0; j < d; ++j) {
      const auto& stat = groups[label]->features[j];
      const auto& def = schema.feature(j);
      if (!stat) {
        throw Error(ErrorCode::kCalibration,
                    "missing statistic for " + def.name + " in group " + groups[label]->name,
                    def.name);
      }
      if (def.kind == FeatureKind::kBinary) {
        rates[label][j] = stat->mean;
      } else {
        continuous[label][j] = CalibratedFeatureDistribution(def, *stat);
      }
    }
  }

  Rng rng(seed);
  std::vector<double> values;
  values.reserve(n * d);
  std::vector<int> labels;
  labels.reserve(n);
  std::vector<std::string> ids;
  ids.reserve(n);
  char id[32];
  for (std::size_t i = 0; i < n; ++i) {
    const int label = Uniform01(rng) < prevalence ? 1 : 0;
    for (std::size_t j = 0; j < d; ++j) {
      if (schema.feature(j).kind == FeatureKind::kBinary) {
        values.push_back(Uniform01(rng) < rates[label][j] ? 1.0 : 0.0);
      } else {
        values.push_back(continuous[label][j].Sample(rng));
      }
    }
    labels.push_back(label);
    std::snprintf(id, sizeof(id), "syn-%06zu", i + 1);
    ids.emplace_back(id);
  }
  return Cohort(schema, std::move(values), std::move(labels), std::move(ids));
}

}  // namespace hkdrisk
