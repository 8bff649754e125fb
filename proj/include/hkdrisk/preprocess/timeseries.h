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

#ifndef HKDRISK_PREPROCESS_TIMESERIES_H_
#define HKDRISK_PREPROCESS_TIMESERIES_H_

#include <vector>

namespace hkdrisk {

struct TimedValue {
  double time = 0.0;  // hours since ICU admission
  double value = 0.0;
};

struct TemporalSummary {
  double mean = 0.0;
  double max = 0.0;
  double min = 0.0;
  int count = 0;
};

// Mean, max and min over samples with 0 <= time <= window (hours). Throws
// when no sample falls inside the window; the caller imputes downstream.
TemporalSummary SummarizeTimeseries(const std::vector<TimedValue>& series, double window);

}  // namespace hkdrisk

#endif  // HKDRISK_PREPROCESS_TIMESERIES_H_
