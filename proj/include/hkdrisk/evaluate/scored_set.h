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

#ifndef HKDRISK_EVALUATE_SCORED_SET_H_
#define HKDRISK_EVALUATE_SCORED_SET_H_

#include <cstddef>
#include <string>
#include <vector>

namespace hkdrisk {

// Parallel risk scores, true labels and row ids.
struct ScoredSet {
  std::vector<double> scores;
  std::vector<int> labels;
  std::vector<std::string> ids;

  std::size_t size() const { return scores.size(); }
  std::size_t positives() const;
  std::size_t negatives() const { return size() - positives(); }

  // Throws on unequal lengths, labels outside {0, 1}, scores outside [0, 1], and
  // (when `require_both_classes`) a missing class.
  void Validate(bool require_both_classes) const;
};

}  // namespace hkdrisk

#endif  // HKDRISK_EVALUATE_SCORED_SET_H_
