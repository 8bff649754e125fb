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

#ifndef HKDRISK_PREPROCESS_SCALER_H_
#define HKDRISK_PREPROCESS_SCALER_H_

#include <span>
#include <string>
#include <vector>

#include "hkdrisk/cohort/cohort.h"

namespace hkdrisk {

// Min-max bounds observed on the training split. Binary features pass through
// unscaled; their bounds are recorded as (0, 1) for completeness.
struct ScalingPlan {
  FeatureSchema schema;
  std::vector<double> x_min;
  std::vector<double> x_max;
  std::string source_lineage;

  // x' = (x - x_min) / (x_max - x_min), clamped to [0, 1]; a constant
  // training column maps every value to 0. Missing values stay missing.
  double Scale(std::size_t feature, double x) const;

  Json ToJson() const;
  static ScalingPlan FromJson(const Json& json);
};

ScalingPlan FitMinMax(const Cohort& train);
Cohort ApplyMinMax(const ScalingPlan& plan, const Cohort& cohort);
void ScaleRow(const ScalingPlan& plan, std::span<double> row);

}  // namespace hkdrisk

#endif  // HKDRISK_PREPROCESS_SCALER_H_
