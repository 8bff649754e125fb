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

#include "hkdrisk/select/two_stage.h"

#include <algorithm>
#include <cstdio>
#include <numeric>

#include "hkdrisk/common/error.h"
#include "hkdrisk/common/parallel.h"

namespace hkdrisk {

SelectionReport ApplySelectionThresholds(std::vector<FeatureSelectionRow> rows,
                                         double rf_keep_threshold, double mi_threshold) {
  if (!(rf_keep_threshold >= 0.0) || !(mi_threshold >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "selection thresholds must be >= 0");
  }
  SelectionReport report;
  report.rf_keep_threshold = rf_keep_threshold;
  report.mi_threshold = mi_threshold;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].kept_by_forest = rows[i].importance >= rf_keep_threshold;
    rows[i].kept_by_mi = rows[i].kept_by_forest && rows[i].mi.mi >= mi_threshold;
    if (rows[i].kept_by_mi) kept.push_back(i);
  }
  if (kept.empty()) {
    char msg[200];
    std::snprintf(msg, sizeof(msg),
                  "no feature passed selection (importance >= %g, MI >= %g nats); "
                  "relax --rf-keep or --mi-threshold",
                  rf_keep_threshold, mi_threshold);
    throw Error(ErrorCode::kInvalidArgument, msg);
  }
  std::stable_sort(kept.begin(), kept.end(), [&](std::size_t a, std::size_t b) {
    return rows[a].importance > rows[b].importance;
  });
  for (std::size_t i : kept) report.selected.push_back(rows[i].feature);
  report.rows = std::move(rows);
  return report;
}

SelectionReport TwoStageSelect(const Cohort& train, const SelectionParams& params) {
  const Forest forest = FitRandomForest(train, params.forest);
  const ImportanceTable importance = GiniImportance(forest);
  std::vector<FeatureSelectionRow> rows(train.cols());
  ParallelFor(rows.size(), [&](std::size_t j) {
    rows[j].feature = train.schema().feature(j).name;
    rows[j].importance = importance.importance[j];
    rows[j].mi = MutualInformation(train.Column(j), train.labels(), params.mi_bins);
  });
  const double rf = params.rf_keep_threshold.value_or(kDefaultRfKeepShare /
                                                      static_cast<double>(train.cols()));
  return ApplySelectionThresholds(std::move(rows), rf, params.mi_threshold);
}

Json SelectionReport::ToJson() const {
  Json j;
  j["rf_keep_threshold"] = EncodeDouble(rf_keep_threshold);
  j["mi_threshold"] = EncodeDouble(mi_threshold);
  Json features = Json::array();
  for (const auto& r : rows) {
    features.push_back({{"feature", r.feature},
                        {"importance", EncodeDouble(r.importance)},
                        {"mi_nats", EncodeDouble(r.mi.mi)},
                        {"mi_bins", r.mi.bins_used},
                        {"binning", r.mi.binning},
                        {"stage1_kept", r.kept_by_forest},
                        {"stage2_kept", r.kept_by_mi}});
  }
  j["features"] = std::move(features);
  j["selected"] = selected;
  return j;
}

}  // namespace hkdrisk
