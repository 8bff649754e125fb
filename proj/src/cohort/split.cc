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

#include "hkdrisk/cohort/split.h"

#include <algorithm>
#include <array>
#include <cmath>

#include "hkdrisk/common/error.h"
#include "hkdrisk/common/random.h"

namespace hkdrisk {
namespace {

void Shuffle(std::vector<std::size_t>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[UniformIndex(rng, i)]);
  }
}

}  // namespace

CohortSplit StratifiedSplit(const Cohort& cohort, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "test_fraction must lie in (0, 1)");
  }
  std::array<std::vector<std::size_t>, 2> by_class;
  for (std::size_t r = 0; r < cohort.rows(); ++r) by_class[cohort.labels()[r]].push_back(r);
  for (int c = 0; c < 2; ++c) {
    if (by_class[c].size() < 2) {
      throw Error(ErrorCode::kStratification,
                  "class " + std::to_string(c) + " has fewer than 2 rows; cannot stratify");
    }
  }

  const double n = static_cast<double>(cohort.rows());
  const auto total_test = static_cast<std::size_t>(std::llround(n * test_fraction));
  std::array<std::size_t, 2> quota{};
  std::array<double, 2> remainder{};
  std::size_t assigned = 0;
  for (int c = 0; c < 2; ++c) {
    const double exact =
        static_cast<double>(by_class[c].size()) * static_cast<double>(total_test) / n;
    quota[c] = static_cast<std::size_t>(std::floor(exact));
    remainder[c] = exact - std::floor(exact);
    assigned += quota[c];
  }
  // Largest remainder; ties go to the lower label.
  while (assigned < total_test) {
    const int c = remainder[1] > remainder[0] ? 1 : 0;
    ++quota[c];
    remainder[c] = -1.0;
    ++assigned;
  }
  for (int c = 0; c < 2; ++c) {
    quota[c] = std::clamp<std::size_t>(quota[c], 1, by_class[c].size() - 1);
  }

  Rng rng(seed);
  std::vector<std::size_t> train_idx;
  std::vector<std::size_t> test_idx;
  for (int c = 0; c < 2; ++c) {
    auto rows = by_class[c];
    Shuffle(rows, rng);
    test_idx.insert(test_idx.end(), rows.begin(), rows.begin() + quota[c]);
    train_idx.insert(train_idx.end(), rows.begin() + quota[c], rows.end());
  }
  std::sort(train_idx.begin(), train_idx.end());
  std::sort(test_idx.begin(), test_idx.end());
  return {cohort.SelectRows(train_idx), cohort.SelectRows(test_idx)};
}

std::vector<int> StratifiedFolds(const std::vector<int>& labels, int k, std::uint64_t seed) {
  if (k < 2) throw Error(ErrorCode::kInvalidArgument, "need at least 2 folds");
  std::array<std::vector<std::size_t>, 2> by_class;
  for (std::size_t r = 0; r < labels.size(); ++r) by_class[labels[r]].push_back(r);
  for (int c = 0; c < 2; ++c) {
    if (by_class[c].size() < static_cast<std::size_t>(k)) {
      throw Error(ErrorCode::kStratification,
                  "class " + std::to_string(c) + " has fewer rows than folds");
    }
  }
  Rng rng(seed);
  std::vector<int> fold(labels.size(), 0);
  // Dealing each shuffled class round-robin keeps the per-fold class counts
  // within one of each other; the offset spreads the larger folds.
  std::size_t offset = 0;
  for (int c = 0; c < 2; ++c) {
    auto rows = by_class[c];
    Shuffle(rows, rng);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      fold[rows[i]] = static_cast<int>((i + offset) % static_cast<std::size_t>(k));
    }
    offset += rows.size();
  }
  return fold;
}

}  // namespace hkdrisk
