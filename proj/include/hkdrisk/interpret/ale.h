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

#ifndef HKDRISK_INTERPRET_ALE_H_
#define HKDRISK_INTERPRET_ALE_H_

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hkdrisk/common/json_util.h"
#include "hkdrisk/models/dataset.h"

namespace hkdrisk {

inline constexpr int kDefaultAleBins = 10;

using ScoreFn = std::function<double(std::span<const double>)>;

// Accumulated local effects at the bin edges z_0 < ... < z_K. Bin k covers
// (z_k, z_{k+1}] (the first bin also holds z_0) and contains counts[k] rows.
struct AleCurve {
  std::string feature;
  std::vector<double> edges;
  std::vector<double> effect;     // centered ALE at each edge
  std::vector<std::size_t> counts;  // per bin
  double centering = 0.0;         // subtracted from the raw accumulation
  bool constant_feature = false;

  // Centered value at each bin midpoint, (effect[k] + effect[k+1]) / 2.
  std::vector<double> BinValues() const;
  // Piecewise-linear interpolation in the edges; clamped outside.
  double Evaluate(double z) const;
  Json ToJson() const;
  std::string ToCsv() const;
};

// Quantile edges at k / n_bins; duplicate edges (ties) collapse so no bin is
// empty. Local effect of bin k = mean over its rows of f(x; x_j = z_{k+1}) -
// f(x; x_j = z_k). The accumulated curve starts at 0 on z_0 and is then
// shifted so its support-weighted mean over bins is 0. A feature with a
// single observed value gives a flat zero curve with constant_feature set.
AleCurve ComputeAle(const ScoreFn& f, const Dataset& data, std::size_t feature,
                    int n_bins = kDefaultAleBins, std::string name = {});

}  // namespace hkdrisk

#endif  // HKDRISK_INTERPRET_ALE_H_
