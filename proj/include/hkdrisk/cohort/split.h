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

#ifndef HKDRISK_COHORT_SPLIT_H_
#define HKDRISK_COHORT_SPLIT_H_

#include <cstdint>
#include <vector>

#include "hkdrisk/cohort/cohort.h"

namespace hkdrisk {

struct CohortSplit {
  Cohort train;
  Cohort test;
};

// Per-class shuffle with largest-remainder allocation of the test quota, so
// the class counts in the test split are within one row of exact proportional
// allocation. Rows keep their original relative order inside each split.
// Requires 0 < test_fraction < 1 and at least two rows of each class.
CohortSplit StratifiedSplit(const Cohort& cohort, double test_fraction, std::uint64_t seed);

// Stratified K-fold assignment: returns fold index per row (0..k-1).
std::vector<int> StratifiedFolds(const std::vector<int>& labels, int k, std::uint64_t seed);

}  // namespace hkdrisk

#endif  // HKDRISK_COHORT_SPLIT_H_
