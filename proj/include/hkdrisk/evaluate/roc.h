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

#ifndef HKDRISK_EVALUATE_ROC_H_
#define HKDRISK_EVALUATE_ROC_H_

#include <cstdint>
#include <span>
#include <vector>

#include "hkdrisk/evaluate/scored_set.h"

namespace hkdrisk {

// Probability that a random positive outscores a random negative, ties
// credited 1/2. Rank (Mann-Whitney) method in O(n log n); the statistic is
// accumulated in exact integer half-units so the result is bit-identical to a
// pairwise count. Throws when a class is absent.
double RocAuc(const ScoredSet& scored);
double RocAuc(std::span<const double> scores, std::span<const int> labels);

// Same statistic with integer row multiplicities, over rows pre-sorted by
// ascending score (`order`). Used by the bootstrap to avoid re-sorting.
double WeightedRocAuc(std::span<const double> scores, std::span<const int> labels,
                      std::span<const std::size_t> order, std::span<const std::uint32_t> weights);

struct RocPoint {
  double threshold = 0.0;
  double fpr = 0.0;
  double tpr = 0.0;
};

// Operating points for "positive iff score >= threshold" at every distinct
// score, from (0, 0) to (1, 1).
std::vector<RocPoint> RocCurve(const ScoredSet& scored);

}  // namespace hkdrisk

#endif  // HKDRISK_EVALUATE_ROC_H_
