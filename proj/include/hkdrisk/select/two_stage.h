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

#ifndef HKDRISK_SELECT_TWO_STAGE_H_
#define HKDRISK_SELECT_TWO_STAGE_H_

#include <optional>
#include <string>
#include <vector>

#include "hkdrisk/cohort/cohort.h"
#include "hkdrisk/common/json_util.h"
#include "hkdrisk/select/forest.h"
#include "hkdrisk/select/mutual_information.h"

namespace hkdrisk {

inline constexpr double kDefaultRfKeepShare = 0.25;
inline constexpr double kDefaultMiThreshold = 0.001;

struct SelectionParams {
  ForestParams forest;
  // Importance floor; defaults to kDefaultRfKeepShare / d.
  std::optional<double> rf_keep_threshold;
  double mi_threshold = kDefaultMiThreshold;
  int mi_bins = kDefaultMiBins;
};

struct FeatureSelectionRow {
  std::string feature;
  double importance = 0.0;
  MiScore mi;
  bool kept_by_forest = false;
  bool kept_by_mi = false;
};

struct SelectionReport {
  double rf_keep_threshold = 0.0;
  double mi_threshold = 0.0;
  // Schema order.
  std::vector<FeatureSelectionRow> rows;
  // Survivors of both stages, by importance descending (ties by schema order).
  std::vector<std::string> selected;

  Json ToJson() const;
};

// Stage 1 keeps features with importance >= rf_keep_threshold; stage 2 keeps
// stage-1 survivors with MI >= mi_threshold. Throws kInvalidArgument when
// nothing survives.
SelectionReport TwoStageSelect(const Cohort& train, const SelectionParams& params);

// Applies both stages to precomputed scores.
SelectionReport ApplySelectionThresholds(std::vector<FeatureSelectionRow> rows,
                                         double rf_keep_threshold, double mi_threshold);

}  // namespace hkdrisk

#endif  // HKDRISK_SELECT_TWO_STAGE_H_
