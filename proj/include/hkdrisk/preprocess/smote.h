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

#ifndef HKDRISK_PREPROCESS_SMOTE_H_
#define HKDRISK_PREPROCESS_SMOTE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hkdrisk/cohort/cohort.h"

namespace hkdrisk {

struct SmoteOptions {
  int k = 5;
  // Requested minority/majority row ratio after oversampling.
  double target_ratio = 1.0;
  std::uint64_t seed = 0;
  // Binary coordinates take the parent value nearest to the interpolation
  // point (the case for delta < 0.5, the neighbor otherwise) so synthetic rows
  // stay valid 0/1 indicators.
  bool snap_binary = true;
};

// Provenance of one synthetic row: indices into the input cohort.
struct SyntheticOrigin {
  std::size_t case_row = 0;
  std::size_t neighbor_row = 0;
  double delta = 0.0;
};

struct SmoteResult {
  // Input rows verbatim, followed by the synthetic minority rows.
  Cohort cohort;
  std::vector<SyntheticOrigin> origins;
  int minority_label = 1;
};

// x_syn = x_case + delta * (x_neighbor - x_case) with delta ~ Uniform[0, 1]
// and the neighbor drawn from the case's k nearest minority rows (Euclidean
// distance in the cohort's current space; callers pass min-max scaled data).
// Cases are visited round-robin over a seeded shuffle of the minority class.
// Only ever called on training folds.
SmoteResult SmoteOversample(const Cohort& train, const SmoteOptions& options);

std::vector<double> SmoteInterpolate(std::span<const double> case_row,
                                     std::span<const double> neighbor, double delta,
                                     const FeatureSchema& schema, bool snap_binary);

}  // namespace hkdrisk

#endif  // HKDRISK_PREPROCESS_SMOTE_H_
