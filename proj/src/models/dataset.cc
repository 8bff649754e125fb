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

#include "hkdrisk/models/dataset.h"

#include <cmath>

#include "hkdrisk/common/error.h"

namespace hkdrisk {

std::size_t Dataset::positives() const {
  std::size_t n = 0;
  for (int v : y) n += v == 1;
  return n;
}

Dataset Dataset::FromCohort(const Cohort& cohort) {
  Dataset d;
  d.rows = cohort.rows();
  d.cols = cohort.cols();
  d.x = cohort.values();
  d.y = cohort.labels();
  for (const auto& f : cohort.schema().features()) d.kinds.push_back(f.kind);
  for (std::size_t r = 0; r < d.rows; ++r) {
    for (std::size_t c = 0; c < d.cols; ++c) {
      if (!std::isfinite(d.at(r, c))) {
        const std::string& name = cohort.schema().feature(c).name;
        throw Error(ErrorCode::kNumeric,
                    "non-finite value for " + name + " in row " + cohort.row_ids()[r], name);
      }
    }
  }
  return d;
}

void Dataset::Validate() const {
  if (x.size() != rows * cols || y.size() != rows || kinds.size() != cols) {
    throw Error(ErrorCode::kInvalidArgument, "dataset shape mismatch");
  }
  for (double v : x) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kNumeric, "non-finite training value");
  }
  for (int v : y) {
    if (v != 0 && v != 1) throw Error(ErrorCode::kInvalidArgument, "labels must be 0 or 1");
  }
}

}  // namespace hkdrisk
