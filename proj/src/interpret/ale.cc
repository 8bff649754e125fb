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

#include "hkdrisk/interpret/ale.h"

#include <algorithm>
#include <sstream>

#include "hkdrisk/common/error.h"
#include "hkdrisk/common/stats.h"

namespace hkdrisk {

std::vector<double> AleCurve::BinValues() const {
  std::vector<double> out;
  for (std::size_t k = 0; k + 1 < effect.size(); ++k) out.push_back(0.5 * (effect[k] + effect[k + 1]));
  return out;
}

double AleCurve::Evaluate(double z) const {
  if (edges.empty()) return 0.0;
  if (z <= edges.front()) return effect.front();
  if (z >= edges.back()) return effect.back();
  const auto it = std::upper_bound(edges.begin(), edges.end(), z);
  const std::size_t k = static_cast<std::size_t>(it - edges.begin()) - 1;
  const double t = (z - edges[k]) / (edges[k + 1] - edges[k]);
  return effect[k] + t * (effect[k + 1] - effect[k]);
}

Json AleCurve::ToJson() const {
  Json counts_json = Json::array();
  for (std::size_t c : counts) counts_json.push_back(c);
  return {{"feature", feature},
          {"edges", EncodeDoubles(edges)},
          {"effect", EncodeDoubles(effect)},
          {"counts", counts_json},
          {"centering", EncodeDouble(centering)},
          {"constant_feature", constant_feature}};
}

std::string AleCurve::ToCsv() const {
  std::ostringstream out;
  out << "bin,lower,upper,count,ale_lower,ale_upper,ale_mid\n";
  for (std::size_t k = 0; k < counts.size(); ++k) {
    out << k << ',' << EncodeDouble(edges[k]) << ',' << EncodeDouble(edges[k + 1]) << ',' << counts[k]
        << ',' << EncodeDouble(effect[k]) << ',' << EncodeDouble(effect[k + 1]) << ','
        << EncodeDouble(0.5 * (effect[k] + effect[k + 1])) << '\n';
  }
  return out.str();
}

AleCurve ComputeAle(const ScoreFn& f, const Dataset& data, std::size_t feature, int n_bins,
                    std::string name) {
  if (data.rows == 0) throw Error(ErrorCode::kInvalidArgument, "ALE needs at least one row");
  if (feature >= data.cols) throw Error(ErrorCode::kInvalidArgument, "ALE feature index out of range", "feature");
  if (n_bins < 1) throw Error(ErrorCode::kInvalidArgument, "ALE needs n_bins >= 1", "n_bins");
  if (!data.kinds.empty() && data.kinds[feature] != FeatureKind::kContinuous) {
    throw Error(ErrorCode::kInvalidArgument, "ALE is defined for continuous features only", name);
  }
  AleCurve curve;
  curve.feature = std::move(name);

  std::vector<double> column(data.rows);
  for (std::size_t r = 0; r < data.rows; ++r) column[r] = data.at(r, feature);
  std::sort(column.begin(), column.end());
  if (column.front() == column.back()) {
    curve.edges = {column.front(), column.back()};
    curve.effect = {0.0, 0.0};
    curve.counts = {data.rows};
    curve.constant_feature = true;
    return curve;
  }
  for (int k = 0; k <= n_bins; ++k) {
    const double q = QuantileSorted(column, static_cast<double>(k) / n_bins);
    if (curve.edges.empty() || q > curve.edges.back()) curve.edges.push_back(q);
  }
  // A bin with no rows (possible when quantiles land inside a run of ties)
  // is merged into its upper neighbour by dropping its upper edge.
  std::vector<std::size_t> bin_of(data.rows);
  while (true) {
    const std::size_t K = curve.edges.size() - 1;
    curve.counts.assign(K, 0);
    for (std::size_t r = 0; r < data.rows; ++r) {
      const double v = data.at(r, feature);
      auto it = std::lower_bound(curve.edges.begin() + 1, curve.edges.end(), v);
      std::size_t k = static_cast<std::size_t>(it - (curve.edges.begin() + 1));
      bin_of[r] = std::min(k, K - 1);
      ++curve.counts[bin_of[r]];
    }
    const auto empty = std::find(curve.counts.begin(), curve.counts.end(), 0u);
    if (empty == curve.counts.end() || K == 1) break;
    const std::size_t k = static_cast<std::size_t>(empty - curve.counts.begin());
    curve.edges.erase(curve.edges.begin() + static_cast<std::ptrdiff_t>(k == K - 1 ? k : k + 1));
  }

  const std::size_t K = curve.counts.size();
  std::vector<double> local(K, 0.0);
  std::vector<double> z(data.cols);
  for (std::size_t r = 0; r < data.rows; ++r) {
    const auto row = data.row(r);
    std::copy(row.begin(), row.end(), z.begin());
    const std::size_t k = bin_of[r];
    z[feature] = curve.edges[k + 1];
    const double hi = f(z);
    z[feature] = curve.edges[k];
    local[k] += hi - f(z);
  }
  std::vector<double> raw(K + 1, 0.0);
  for (std::size_t k = 0; k < K; ++k) raw[k + 1] = raw[k] + local[k] / static_cast<double>(curve.counts[k]);
  double weighted = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    weighted += static_cast<double>(curve.counts[k]) * 0.5 * (raw[k] + raw[k + 1]);
  }
  curve.centering = weighted / static_cast<double>(data.rows);
  curve.effect.resize(K + 1);
  for (std::size_t k = 0; k <= K; ++k) curve.effect[k] = raw[k] - curve.centering;
  return curve;
}

}  // namespace hkdrisk
