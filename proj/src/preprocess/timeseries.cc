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

#include "hkdrisk/preprocess/timeseries.h"

#include <algorithm>
#include <cmath>

#include "hkdrisk/common/error.h"

namespace hkdrisk {

TemporalSummary SummarizeTimeseries(const std::vector<TimedValue>& series, double window) {
  TemporalSummary out;
  double sum = 0.0;
  for (const auto& s : series) {
    if (s.time < 0.0 || s.time > window || !std::isfinite(s.value)) continue;
    if (out.count == 0) {
      out.max = out.min = s.value;
    } else {
      out.max = std::max(out.max, s.value);
      out.min = std::min(out.min, s.value);
    }
    sum += s.value;
    ++out.count;
  }
  if (out.count == 0) {
    throw Error(ErrorCode::kInvalidArgument, "no samples inside the summary window");
  }
  out.mean = sum / out.count;
  return out;
}

}  // namespace hkdrisk
