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

#ifndef HKDRISK_EVALUATE_THRESHOLD_H_
#define HKDRISK_EVALUATE_THRESHOLD_H_

#include <vector>

#include "hkdrisk/evaluate/scored_set.h"

namespace hkdrisk {

inline constexpr double kDefaultMinSensitivity = 0.80;

// 0, 1 and the midpoints between adjacent distinct scores, ascending.
std::vector<double> CandidateThresholds(const ScoredSet& scored);

struct ThresholdChoice {
  double threshold = 0.0;
  double sensitivity = 0.0;
  double specificity = 0.0;
};

// Among candidates with sensitivity >= min_sensitivity and sensitivity >
// specificity (the perfect operating point sens = spec = 1 is also admitted),
// picks the one with the highest specificity, ties going to the higher
// threshold. Throws kInvalidArgument stating the best achievable sensitivity
// when no candidate qualifies.
ThresholdChoice SelectThreshold(const ScoredSet& scored,
                                double min_sensitivity = kDefaultMinSensitivity);

}  // namespace hkdrisk

#endif  // HKDRISK_EVALUATE_THRESHOLD_H_
