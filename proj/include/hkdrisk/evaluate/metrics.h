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

#ifndef HKDRISK_EVALUATE_METRICS_H_
#define HKDRISK_EVALUATE_METRICS_H_

#include <cstddef>
#include <optional>

#include "hkdrisk/common/json_util.h"
#include "hkdrisk/evaluate/scored_set.h"

namespace hkdrisk {

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;
};

// Score >= threshold counts as a positive prediction.
ConfusionCounts CountConfusion(const ScoredSet& scored, double threshold);

struct MetricsRow {
  // Rank metrics; absent when only point metrics were computed.
  std::optional<double> auroc;
  std::optional<double> auroc_lo;
  std::optional<double> auroc_hi;

  double accuracy = 0.0;
  double f1 = 0.0;
  double sensitivity = 0.0;
  double specificity = 0.0;
  // Absent when the corresponding predicted class is empty.
  std::optional<double> ppv;
  std::optional<double> npv;
  double threshold = 0.0;
  ConfusionCounts counts;

  Json ToJson() const;
  static MetricsRow FromJson(const Json& j);
};

MetricsRow MetricsFromCounts(const ConfusionCounts& c, double threshold);

// Point metrics at `threshold`, which must lie in [0, 1].
MetricsRow ConfusionMetrics(const ScoredSet& scored, double threshold);

}  // namespace hkdrisk

#endif  // HKDRISK_EVALUATE_METRICS_H_
