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

#include "hkdrisk/evaluate/threshold.h"

#include <algorithm>
#include <cstdio>

#include "hkdrisk/common/error.h"

namespace hkdrisk {

std::vector<double> CandidateThresholds(const ScoredSet& scored) {
  std::vector<double> distinct = scored.scores;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<double> out;
  out.reserve(distinct.size() + 1);
  out.push_back(0.0);
  for (std::size_t i = 1; i < distinct.size(); ++i) {
    const double mid = distinct[i - 1] + (distinct[i] - distinct[i - 1]) / 2.0;
    if (mid > out.back()) out.push_back(mid);
  }
  if (out.back() < 1.0) out.push_back(1.0);
  return out;
}

ThresholdChoice SelectThreshold(const ScoredSet& scored, double min_sensitivity) {
  scored.Validate(true);
  if (!(min_sensitivity >= 0.0 && min_sensitivity <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "min_sensitivity must lie in [0, 1]");
  }
  const std::vector<double> candidates = CandidateThresholds(scored);
  std::vector<std::pair<double, int>> sorted;
  sorted.reserve(scored.size());
  for (std::size_t i = 0; i < scored.size(); ++i) sorted.emplace_back(scored.scores[i], scored.labels[i]);
  std::sort(sorted.begin(), sorted.end());

  const double pos = static_cast<double>(scored.positives());
  const double neg = static_cast<double>(scored.negatives());
  // Ascending sweep; `below` rows are predicted negative.
  std::size_t below = 0;
  std::size_t neg_below = 0;
  std::size_t pos_below = 0;
  bool found = false;
  ThresholdChoice best;
  double max_sens = 0.0;
  for (double t : candidates) {
    while (below < sorted.size() && sorted[below].first < t) {
      (sorted[below].second == 1 ? pos_below : neg_below) += 1;
      ++below;
    }
    const double sens = (pos - static_cast<double>(pos_below)) / pos;
    const double spec = static_cast<double>(neg_below) / neg;
    const bool perfect = sens == 1.0 && spec == 1.0;
    if (!(sens > spec || perfect)) continue;
    max_sens = std::max(max_sens, sens);
    if (sens < min_sensitivity) continue;
    if (!found || spec >= best.specificity) {
      best = {t, sens, spec};
      found = true;
    }
  }
  if (!found) {
    char msg[160];
    std::snprintf(msg, sizeof(msg),
                  "no threshold reaches sensitivity %.4f with sensitivity > specificity; "
                  "max achievable sensitivity is %.4f",
                  min_sensitivity, max_sens);
    throw Error(ErrorCode::kInvalidArgument, msg);
  }
  return best;
}

}  // namespace hkdrisk
