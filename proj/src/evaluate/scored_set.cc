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

#include "hkdrisk/evaluate/scored_set.h"

#include <cmath>

#include "hkdrisk/common/error.h"

namespace hkdrisk {

std::size_t ScoredSet::positives() const {
  std::size_t n = 0;
  for (int y : labels) n += (y == 1);
  return n;
}

void ScoredSet::Validate(bool require_both_classes) const {
  if (labels.size() != scores.size() || (!ids.empty() && ids.size() != scores.size())) {
    throw Error(ErrorCode::kInvalidArgument, "scored set columns have unequal lengths");
  }
  for (int y : labels) {
    if (y != 0 && y != 1) throw Error(ErrorCode::kInvalidArgument, "labels must be 0 or 1");
  }
  for (double s : scores) {
    if (!std::isfinite(s)) throw Error(ErrorCode::kNumeric, "non-finite score");
    if (s < 0.0 || s > 1.0) throw Error(ErrorCode::kRange, "score outside [0, 1]");
  }
  if (require_both_classes && (positives() == 0 || negatives() == 0)) {
    throw Error(ErrorCode::kInvalidArgument, "both classes are required");
  }
}

}  // namespace hkdrisk
