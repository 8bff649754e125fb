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

#ifndef HKDRISK_MODELS_DATASET_H_
#define HKDRISK_MODELS_DATASET_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hkdrisk/cohort/cohort.h"

namespace hkdrisk {

// Dense, fully observed training matrix handed to the classifier engines.
struct Dataset {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> x;  // row-major
  std::vector<int> y;
  std::vector<FeatureKind> kinds;

  std::span<const double> row(std::size_t r) const { return {x.data() + r * cols, cols}; }
  double at(std::size_t r, std::size_t c) const { return x[r * cols + c]; }
  std::size_t positives() const;

  // Throws kNumeric naming the first non-finite cell (row id and feature).
  static Dataset FromCohort(const Cohort& cohort);
  // Throws on shape mismatch, non-finite values or labels outside {0, 1}.
  void Validate() const;
};

}  // namespace hkdrisk

#endif  // HKDRISK_MODELS_DATASET_H_
