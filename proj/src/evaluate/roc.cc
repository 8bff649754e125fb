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

#include "hkdrisk/evaluate/roc.h"

#include <algorithm>
#include <limits>
#include <numeric>

#include "hkdrisk/common/error.h"

namespace hkdrisk {
namespace {

std::vector<std::size_t> SortedOrder(std::span<const double> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  return order;
}

}  // namespace

double WeightedRocAuc(std::span<const double> scores, std::span<const int> labels,
                      std::span<const std::size_t> order, std::span<const std::uint32_t> weights) {
  // Walk tie groups in ascending score order; each positive in a group beats
  // every negative seen before it and ties the negatives inside the group.
  std::int64_t neg_below = 0;
  std::int64_t pos_total = 0;
  std::int64_t twice_u = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    std::int64_t pos = 0;
    std::int64_t neg = 0;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      const std::int64_t w = weights.empty() ? 1 : weights[order[j]];
      (labels[order[j]] == 1 ? pos : neg) += w;
      ++j;
    }
    twice_u += pos * (2 * neg_below + neg);
    neg_below += neg;
    pos_total += pos;
    i = j;
  }
  if (pos_total == 0 || neg_below == 0) {
    throw Error(ErrorCode::kInvalidArgument, "AUROC requires both classes");
  }
  return static_cast<double>(twice_u) / static_cast<double>(2 * pos_total * neg_below);
}

double RocAuc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) {
    throw Error(ErrorCode::kInvalidArgument, "scores and labels differ in length");
  }
  const auto order = SortedOrder(scores);
  return WeightedRocAuc(scores, labels, order, {});
}

double RocAuc(const ScoredSet& scored) {
  scored.Validate(true);
  return RocAuc(scored.scores, scored.labels);
}

std::vector<RocPoint> RocCurve(const ScoredSet& scored) {
  scored.Validate(true);
  const auto order = SortedOrder(scored.scores);
  const double p = static_cast<double>(scored.positives());
  const double n = static_cast<double>(scored.negatives());
  std::vector<RocPoint> points;
  points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
  // Descending sweep: lowering the threshold past each tie group.
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t i = order.size();
  while (i > 0) {
    std::size_t j = i;
    const double s = scored.scores[order[i - 1]];
    while (j > 0 && scored.scores[order[j - 1]] == s) {
      (scored.labels[order[j - 1]] == 1 ? tp : fp) += 1;
      --j;
    }
    points.push_back({s, static_cast<double>(fp) / n, static_cast<double>(tp) / p});
    i = j;
  }
  return points;
}

}  // namespace hkdrisk
