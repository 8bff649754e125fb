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

#ifndef HKDRISK_SELECT_MUTUAL_INFORMATION_H_
#define HKDRISK_SELECT_MUTUAL_INFORMATION_H_

#include <span>
#include <string>
#include <vector>

namespace hkdrisk {

inline constexpr int kDefaultMiBins = 10;

// Equal-frequency discretization by rank. Tied values share a bin. When the
// feature has at most `bins` distinct values each value is its own bin.
// Returns a dense bin code per value.
std::vector<int> EqualFrequencyBins(std::span<const double> values, int bins);

// Plug-in mutual information in nats of a joint table of counts or
// probabilities (rows: x, cols: y). Negative rounding residue floors at 0.
double MutualInformationFromTable(const std::vector<std::vector<double>>& joint);

// Plug-in mutual information between two discrete codings.
double MutualInformationDiscrete(std::span<const int> x, std::span<const int> y);

// Entropy in nats of a discrete coding.
double Entropy(std::span<const int> x);

struct MiScore {
  double mi = 0.0;
  int bins_used = 0;
  std::string binning;
};

// Feature values are discretized with EqualFrequencyBins. Labels must take at
// least two distinct values; a constant feature scores 0.
MiScore MutualInformation(std::span<const double> values, std::span<const int> labels,
                          int bins = kDefaultMiBins);

}  // namespace hkdrisk

#endif  // HKDRISK_SELECT_MUTUAL_INFORMATION_H_
