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

#ifndef HKDRISK_COHORT_SYNTHETIC_H_
#define HKDRISK_COHORT_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>

#include "hkdrisk/cohort/cohort.h"
#include "hkdrisk/cohort/group_stats.h"
#include "hkdrisk/cohort/truncated_normal.h"

namespace hkdrisk {

// Synthetic cohort calibrated to outcome-group statistics ("survivor" and
// "non_survivor" groups must both cover every schema feature).
//
// Labels are Bernoulli(prevalence). A continuous feature in outcome group g is
// drawn from a normal truncated to the feature's valid range; the parent normal
// is moment-matched so that the truncated mean equals the published group mean
// (see MatchTruncatedMoments). Binary features are Bernoulli(group rate).
// Features are independent given the label.
Cohort GenerateSyntheticCohort(const GroupStats& stats, std::size_t n, double prevalence,
                               std::uint64_t seed);

// Parent distribution actually sampled for (group, feature).
TruncatedNormal CalibratedFeatureDistribution(const FeatureDef& def, const FeatureStat& stat);

}  // namespace hkdrisk

#endif  // HKDRISK_COHORT_SYNTHETIC_H_
