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

#ifndef HKDRISK_PREPROCESS_IMPUTER_H_
#define HKDRISK_PREPROCESS_IMPUTER_H_

#include <string>
#include <vector>

#include "hkdrisk/cohort/cohort.h"

namespace hkdrisk {

// Fill value per schema feature in natural units: median for continuous
// features, mode for binary ones (a 50/50 tie resolves to 0).
struct ImputationPlan {
  FeatureSchema schema;
  std::vector<double> fill;
  // Lineage of the cohort the plan was fitted on.
  std::string source_lineage;

  Json ToJson() const;
  static ImputationPlan FromJson(const Json& json);
};

// Throws naming the feature when a feature has no observed training value.
ImputationPlan FitImputer(const Cohort& train);
// Replaces missing cells with the plan's fill values; observed cells are
// untouched. Throws on schema mismatch.
Cohort ApplyImputer(const ImputationPlan& plan, const Cohort& cohort);
// In-place variant over one natural-unit row.
void ImputeRow(const ImputationPlan& plan, std::span<double> row);

}  // namespace hkdrisk

#endif  // HKDRISK_PREPROCESS_IMPUTER_H_
