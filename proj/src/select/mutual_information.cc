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

#include "hkdrisk/select/mutual_information.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "hkdrisk/common/error.h"

namespace hkdrisk {
namespace {

std::vector<int> Densify(std::span<const int> x, int* levels) {
  std::map<int, int> code;
  for (int v : x) code.emplace(v, 0);
  int next = 0;
  for (auto& [v, c] : code) c = next++;
  std::vector<int> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = code[x[i]];
  *levels = next;
  return out;
}

}  // namespace

std::vector<int> EqualFrequencyBins(std::span<const double> values, int bins) {
  if (bins < 1) throw Error(ErrorCode::kInvalidArgument, "bin count must be positive");
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::size_t distinct = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0 || values[order[i]] != values[order[i - 1]]) ++distinct;
  }
  std::vector<int> raw(n);
  int current = -1;
  for (std::size_t i = 0; i < n; ++i) {
    const bool new_value = i == 0 || values[order[i]] != values[order[i - 1]];
    if (new_value) {
      current = distinct <= static_cast<std::size_t>(bins)
                    ? current + 1
                    : static_cast<int>(i * static_cast<std::size_t>(bins) / n);
    }
    raw[order[i]] = current;
  }
  int levels = 0;
  return Densify(raw, &levels);
}

double MutualInformationFromTable(const std::vector<std::vector<double>>& joint) {
  double total = 0.0;
  std::size_t cols = 0;
  for (const auto& row : joint) {
    cols = std::max(cols, row.size());
    for (double v : row) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw Error(ErrorCode::kInvalidArgument, "joint table entries must be finite and >= 0");
      }
      total += v;
    }
  }
  if (total <= 0.0) throw Error(ErrorCode::kInvalidArgument, "empty joint table");
  std::vector<double> px(joint.size(), 0.0);
  std::vector<double> py(cols, 0.0);
  for (std::size_t i = 0; i < joint.size(); ++i) {
    for (std::size_t j = 0; j < joint[i].size(); ++j) {
      px[i] += joint[i][j] / total;
      py[j] += joint[i][j] / total;
    }
  }
  double mi = 0.0;
  for (std::size_t i = 0; i < joint.size(); ++i) {
    for (std::size_t j = 0; j < joint[i].size(); ++j) {
      const double p = joint[i][j] / total;
      if (p > 0.0) mi += p * std::log(p / (px[i] * py[j]));
    }
  }
  return std::max(0.0, mi);
}

double MutualInformationDiscrete(std::span<const int> x, std::span<const int> y) {
  if (x.size() != y.size() || x.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "codings must be nonempty and equally long");
  }
  int nx = 0;
  int ny = 0;
  const std::vector<int> cx = Densify(x, &nx);
  const std::vector<int> cy = Densify(y, &ny);
  std::vector<std::vector<double>> table(nx, std::vector<double>(ny, 0.0));
  for (std::size_t i = 0; i < cx.size(); ++i) table[cx[i]][cy[i]] += 1.0;
  return MutualInformationFromTable(table);
}

double Entropy(std::span<const int> x) {
  if (x.empty()) throw Error(ErrorCode::kInvalidArgument, "empty coding");
  int levels = 0;
  const std::vector<int> c = Densify(x, &levels);
  std::vector<double> counts(levels, 0.0);
  for (int v : c) counts[v] += 1.0;
  double h = 0.0;
  const double n = static_cast<double>(x.size());
  for (double k : counts) h -= k / n * std::log(k / n);
  return h;
}

MiScore MutualInformation(std::span<const double> values, std::span<const int> labels, int bins) {
  if (values.size() != labels.size()) {
    throw Error(ErrorCode::kInvalidArgument, "values and labels differ in length");
  }
  int label_levels = 0;
  Densify(labels, &label_levels);
  if (label_levels < 2) throw Error(ErrorCode::kInvalidArgument, "labels must take two values");
  for (double v : values) {
    if (std::isnan(v)) throw Error(ErrorCode::kInvalidArgument, "mutual information input has missing values");
  }
  const std::vector<int> codes = EqualFrequencyBins(values, bins);
  MiScore s;
  s.bins_used = codes.empty() ? 0 : *std::max_element(codes.begin(), codes.end()) + 1;
  s.binning = "equal-frequency, " + std::to_string(bins) + " bins";
  s.mi = s.bins_used < 2 ? 0.0 : MutualInformationDiscrete(codes, labels);
  return s;
}

}  // namespace hkdrisk
