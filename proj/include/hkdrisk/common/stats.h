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

#ifndef HKDRISK_COMMON_STATS_H_
#define HKDRISK_COMMON_STATS_H_

#include <span>
#include <vector>

namespace hkdrisk {

double Mean(std::span<const double> values);
// Sample standard deviation (n - 1 denominator); 0 for a single value.
double SampleSd(std::span<const double> values);
// Median; averages the two middle values for even counts.
double Median(std::vector<double> values);
// Linear-interpolation quantile (Hyndman-Fan type 7) of an ascending sample.
double QuantileSorted(std::span<const double> sorted, double q);
double Quantile(std::vector<double> values, double q);

}  // namespace hkdrisk

#endif  // HKDRISK_COMMON_STATS_H_
