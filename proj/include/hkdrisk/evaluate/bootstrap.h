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

#ifndef HKDRISK_EVALUATE_BOOTSTRAP_H_
#define HKDRISK_EVALUATE_BOOTSTRAP_H_

#include <cstdint>
#include <string>
#include <vector>

#include "hkdrisk/evaluate/scored_set.h"

namespace hkdrisk {

inline constexpr int kDefaultBootstrapResamples = 2000;

struct BootstrapCi {
  double lo = 0.0;
  double hi = 0.0;
  int n_boot = 0;
  std::uint64_t seed = 0;
  double level = 0.95;
  std::string method = "percentile, class-stratified";
};

// AUROC of each stratified resample, indexed by resample. Resample b draws
// positives and negatives separately with replacement from its own stream
// DeriveSeed(seed, b), so the output does not depend on thread scheduling.
std::vector<double> BootstrapAucSamples(const ScoredSet& scored, int n_boot, std::uint64_t seed);

// Percentile interval at `level` over BootstrapAucSamples.
BootstrapCi BootstrapAucCi(const ScoredSet& scored, int n_boot = kDefaultBootstrapResamples,
                           std::uint64_t seed = 0, double level = 0.95);

}  // namespace hkdrisk

#endif  // HKDRISK_EVALUATE_BOOTSTRAP_H_
