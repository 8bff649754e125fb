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

#include "hkdrisk/preprocess/smote.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hkdrisk/common/error.h"
#include "hkdrisk/common/log.h"
#include "hkdrisk/common/random.h"

namespace hkdrisk {

std::vector<double> SmoteInterpolate(std::span<const double> case_row,
                                     std::span<const double> neighbor, double delta,
                                     const FeatureSchema& schema, bool snap_binary) {
  std::vector<double> out(case_row.size());
  for (std::size_t j = 0; j < case_row.size(); ++j) {
    if (snap_binary && schema.feature(j).kind == FeatureKind::kBinary) {
      out[j] = delta < 0.5 ? case_row[j] : neighbor[j];
    } else {
      out[j] = case_row[j] + delta * (neighbor[j] - case_row[j]);
    }
  }
  return out;
}

SmoteResult SmoteOversample(const Cohort& train, const SmoteOptions& options) {
  if (options.k < 1) throw Error(ErrorCode::kInvalidArgument, "SMOTE needs k >= 1");
  if (train.CountMissing() > 0) {
    throw Error(ErrorCode::kInvalidArgument, "SMOTE requires an imputed cohort");
  }
  const std::size_t n1 = train.CountLabel(1);
  const std::size_t n0 = train.CountLabel(0);
  const int minority = n1 <= n0 ? 1 : 0;
  const std::size_t n_min = std::min(n0, n1);
  const std::size_t n_maj = std::max(n0, n1);
  if (n_min < static_cast<std::size_t>(options.k) + 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "minority class has " + std::to_string(n_min) + " rows; SMOTE with k=" +
                    std::to_string(options.k) + " needs at least k+1");
  }

  SmoteResult result{train, {}, minority};
  const auto target =
      static_cast<std::size_t>(std::llround(options.target_ratio * static_cast<double>(n_maj)));
  if (target <= n_min) {
    LogWarning("SMOTE target ratio " + std::to_string(options.target_ratio) +
               " does not exceed the current minority ratio; no rows added");
    return result;
  }
  const std::size_t n_synthetic = target - n_min;

  std::vector<std::size_t> members;
  for (std::size_t r = 0; r < train.rows(); ++r) {
    if (train.labels()[r] == minority) members.push_back(r);
  }
  const std::size_t d = train.cols();
  const std::size_t k = static_cast<std::size_t>(options.k);

  // k nearest minority neighbours of each minority row (ties by row order).
  std::vector<std::vector<std::size_t>> neighbors(members.size());
  std::vector<std::pair<double, std::size_t>> dist(members.size());
  for (std::size_t a = 0; a < members.size(); ++a) {
    auto xa = train.row(members[a]);
    for (std::size_t b = 0; b < members.size(); ++b) {
      double s = 0.0;
      auto xb = train.row(members[b]);
      for (std::size_t j = 0; j < d; ++j) s += (xa[j] - xb[j]) * (xa[j] - xb[j]);
      dist[b] = {b == a ? std::numeric_limits<double>::infinity() : s, b};
    }
    std::partial_sort(dist.begin(), dist.begin() + k, dist.end());
    for (std::size_t i = 0; i < k; ++i) neighbors[a].push_back(dist[i].second);
  }

  Rng rng(options.seed);
  std::vector<std::size_t> order(members.size());
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[UniformIndex(rng, i)]);

  std::vector<double> values = train.values();
  values.reserve(values.size() + n_synthetic * d);
  std::vector<int> labels = train.labels();
  std::vector<std::string> ids = train.row_ids();
  for (std::size_t s = 0; s < n_synthetic; ++s) {
    const std::size_t a = order[s % order.size()];
    const std::size_t b = neighbors[a][UniformIndex(rng, k)];
    const double delta = Uniform01(rng);
    auto row = SmoteInterpolate(train.row(members[a]), train.row(members[b]), delta,
                                train.schema(), options.snap_binary);
    values.insert(values.end(), row.begin(), row.end());
    labels.push_back(minority);
    ids.push_back("smote-" + std::to_string(s + 1));
    result.origins.push_back({members[a], members[b], delta});
  }
  result.cohort = Cohort(train.schema(), std::move(values), std::move(labels), std::move(ids),
                         train.lineage());
  return result;
}

}  // namespace hkdrisk
