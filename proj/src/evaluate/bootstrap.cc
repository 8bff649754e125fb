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

#include "hkdrisk/evaluate/bootstrap.h"

#include <algorithm>
#include <numeric>

#include "hkdrisk/common/error.h"
#include "hkdrisk/common/parallel.h"
#include "hkdrisk/common/random.h"
#include "hkdrisk/common/stats.h"
#include "hkdrisk/evaluate/roc.h"

namespace hkdrisk {

std::vector<double> BootstrapAucSamples(const ScoredSet& scored, int n_boot, std::uint64_t seed) {
  scored.Validate(true);
  if (n_boot < 1) throw Error(ErrorCode::kInvalidArgument, "n_boot must be positive");
  std::vector<std::size_t> order(scored.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scored.scores[a] < scored.scores[b];
  });
  std::vector<std::size_t> pos_rows;
  std::vector<std::size_t> neg_rows;
  for (std::size_t i = 0; i < scored.size(); ++i) {
    (scored.labels[i] == 1 ? pos_rows : neg_rows).push_back(i);
  }

  std::vector<double> aucs(static_cast<std::size_t>(n_boot));
  ParallelFor(aucs.size(), [&](std::size_t b) {
    Rng rng(DeriveSeed(seed, b));
    std::vector<std::uint32_t> weights(scored.size(), 0);
    for (const auto* rows : {&pos_rows, &neg_rows}) {
      for (std::size_t k = 0; k < rows->size(); ++k) {
        ++weights[(*rows)[UniformIndex(rng, rows->size())]];
      }
    }
    aucs[b] = WeightedRocAuc(scored.scores, scored.labels, order, weights);
  });
  return aucs;
}

BootstrapCi BootstrapAucCi(const ScoredSet& scored, int n_boot, std::uint64_t seed, double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "confidence level must lie in (0, 1)");
  }
  std::vector<double> aucs = BootstrapAucSamples(scored, n_boot, seed);
  std::sort(aucs.begin(), aucs.end());
  const double tail = (1.0 - level) / 2.0;
  BootstrapCi ci;
  ci.lo = QuantileSorted(aucs, tail);
  ci.hi = QuantileSorted(aucs, 1.0 - tail);
  ci.n_boot = n_boot;
  ci.seed = seed;
  ci.level = level;
  return ci;
}

}  // namespace hkdrisk
