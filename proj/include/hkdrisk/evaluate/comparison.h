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

#ifndef HKDRISK_EVALUATE_COMPARISON_H_
#define HKDRISK_EVALUATE_COMPARISON_H_

#include <optional>
#include <string>
#include <vector>

#include "hkdrisk/cohort/cohort.h"
#include "hkdrisk/cohort/group_stats.h"
#include "hkdrisk/common/json_util.h"
#include "hkdrisk/evaluate/welch.h"

namespace hkdrisk {

struct ComparisonRow {
  std::string feature;
  std::string unit;
  FeatureKind kind = FeatureKind::kContinuous;
  FeatureStat a;
  FeatureStat b;
  // Absent when either group has fewer than two observed values.
  std::optional<TTestResult> test;
};

// Per-feature mean (sd) of two groups with a Welch t test p value.
struct ComparisonTable {
  std::string group_a;
  std::string group_b;
  std::size_t size_a = 0;
  std::size_t size_b = 0;
  std::vector<ComparisonRow> rows;

  Json ToJson() const;
  std::string ToCsv() const;
  // Fixed-width text layout: Feature | Unit | A mean (sd) | B mean (sd) | p.
  std::string ToText() const;
};

ComparisonTable CompareCohorts(const Cohort& a, const Cohort& b, std::string name_a,
                               std::string name_b);
// Survivors (label 0) against non-survivors (label 1).
ComparisonTable CompareByLabel(const Cohort& cohort);
ComparisonTable CompareSplit(const Cohort& train, const Cohort& test);

// "2.84 (2.17)".
std::string FormatMeanSd(const FeatureStat& s);
// "< 0.001" below 0.001, otherwise three decimals.
std::string FormatPValue(double p);

}  // namespace hkdrisk

#endif  // HKDRISK_EVALUATE_COMPARISON_H_
