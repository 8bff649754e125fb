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

#include "hkdrisk/select/forest.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "hkdrisk/common/error.h"
#include "hkdrisk/common/parallel.h"
#include "hkdrisk/common/random.h"

namespace hkdrisk {
namespace {

// Column-major bin indices; bin b of feature j holds values in
// (thresholds[j][b-1], thresholds[j][b]].
struct BinnedData {
  std::size_t rows = 0;
  std::vector<std::vector<double>> thresholds;
  std::vector<std::vector<std::uint16_t>> bins;
  const std::vector<int>* labels = nullptr;
};

std::vector<double> SplitCandidates(std::vector<double> values, int max_bins) {
  std::sort(values.begin(), values.end());
  std::vector<double> distinct = values;
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<double> out;
  if (distinct.size() <= static_cast<std::size_t>(max_bins)) {
    out.assign(distinct.begin(), distinct.end() - 1);
  } else {
    for (int k = 1; k < max_bins; ++k) {
      const std::size_t pos = static_cast<std::size_t>(k) * values.size() / max_bins;
      const double v = values[std::min(pos, values.size() - 1)];
      if (v < distinct.back() && (out.empty() || v > out.back())) out.push_back(v);
    }
  }
  return out;
}

BinnedData Bin(const Cohort& train, int max_bins) {
  BinnedData data;
  data.rows = train.rows();
  data.labels = &train.labels();
  data.thresholds.resize(train.cols());
  data.bins.resize(train.cols());
  for (std::size_t j = 0; j < train.cols(); ++j) {
    const std::vector<double> column = train.Column(j);
    data.thresholds[j] = SplitCandidates(column, max_bins);
    const auto& t = data.thresholds[j];
    auto& b = data.bins[j];
    b.resize(column.size());
    for (std::size_t r = 0; r < column.size(); ++r) {
      b[r] = static_cast<std::uint16_t>(std::lower_bound(t.begin(), t.end(), column[r]) - t.begin());
    }
  }
  return data;
}

double Gini(double pos, double total) {
  if (total <= 0.0) return 0.0;
  const double p = pos / total;
  return 2.0 * p * (1.0 - p);
}

class TreeBuilder {
 public:
  TreeBuilder(const BinnedData& data, const ForestParams& params, std::size_t mtry, Rng& rng)
      : data_(data), params_(params), mtry_(mtry), rng_(rng) {}

  ForestTree Build(std::vector<std::size_t> rows, std::uint64_t seed) {
    ForestTree tree;
    tree.seed = seed;
    root_size_ = static_cast<double>(rows.size());
    Grow(tree, std::move(rows), 0);
    return tree;
  }

 private:
  struct Split {
    int feature = -1;
    int bin = -1;
    double decrease = -1.0;
  };

  int Grow(ForestTree& tree, std::vector<std::size_t> rows, int depth) {
    const int id = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    double pos = 0.0;
    for (std::size_t r : rows) pos += (*data_.labels)[r];
    const double n = static_cast<double>(rows.size());
    {
      ForestNode& node = tree.nodes[id];
      node.samples = rows.size();
      node.weight = n / root_size_;
      node.gini = Gini(pos, n);
      node.class_share = {1.0 - pos / n, pos / n};
    }
    const bool pure = pos == 0.0 || pos == n;
    if (pure || depth >= params_.max_depth || rows.size() < 2u * params_.min_leaf) return id;
    const Split split = BestSplit(rows, pos);
    if (split.feature < 0) return id;

    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
    const auto& b = data_.bins[split.feature];
    for (std::size_t r : rows) (b[r] <= split.bin ? left : right).push_back(r);
    rows.clear();
    rows.shrink_to_fit();
    tree.nodes[id].feature = split.feature;
    tree.nodes[id].threshold = data_.thresholds[split.feature][split.bin];
    const int l = Grow(tree, std::move(left), depth + 1);
    const int r = Grow(tree, std::move(right), depth + 1);
    tree.nodes[id].left = l;
    tree.nodes[id].right = r;
    return id;
  }

  Split BestSplit(const std::vector<std::size_t>& rows, double pos_total) {
    const std::size_t d = data_.thresholds.size();
    std::vector<std::size_t> features(d);
    std::iota(features.begin(), features.end(), 0);
    for (std::size_t i = 0; i < mtry_; ++i) {
      std::swap(features[i], features[i + UniformIndex(rng_, d - i)]);
    }
    features.resize(mtry_);
    std::sort(features.begin(), features.end());

    const double n = static_cast<double>(rows.size());
    const double parent = Gini(pos_total, n);
    const double min_leaf = static_cast<double>(params_.min_leaf);
    Split best;
    std::vector<double> count;
    std::vector<double> pos;
    for (std::size_t j : features) {
      const std::size_t n_bins = data_.thresholds[j].size() + 1;
      if (n_bins < 2) continue;
      count.assign(n_bins, 0.0);
      pos.assign(n_bins, 0.0);
      const auto& b = data_.bins[j];
      for (std::size_t r : rows) {
        count[b[r]] += 1.0;
        pos[b[r]] += (*data_.labels)[r];
      }
      double left_n = 0.0;
      double left_pos = 0.0;
      for (std::size_t k = 0; k + 1 < n_bins; ++k) {
        left_n += count[k];
        left_pos += pos[k];
        if (count[k] == 0.0) continue;  // same partition as the previous bin
        const double right_n = n - left_n;
        if (left_n < min_leaf || right_n < min_leaf) continue;
        const double child = (left_n * Gini(left_pos, left_n) +
                              right_n * Gini(pos_total - left_pos, right_n)) / n;
        const double decrease = parent - child;
        if (decrease > best.decrease + 1e-15) best = {static_cast<int>(j), static_cast<int>(k), decrease};
      }
    }
    return best;
  }

  const BinnedData& data_;
  const ForestParams& params_;
  std::size_t mtry_;
  Rng& rng_;
  double root_size_ = 1.0;
};

}  // namespace

double Forest::PredictProba(std::span<const double> row) const {
  if (row.size() != features_.size()) {
    throw Error(ErrorCode::kInvalidArgument, "row width does not match forest features");
  }
  if (trees_.empty()) throw Error(ErrorCode::kInvalidArgument, "empty forest");
  double sum = 0.0;
  for (const auto& tree : trees_) {
    int id = 0;
    while (!tree.nodes[id].is_leaf()) {
      const ForestNode& node = tree.nodes[id];
      id = row[node.feature] <= node.threshold ? node.left : node.right;
    }
    sum += tree.nodes[id].class_share[1];
  }
  return sum / static_cast<double>(trees_.size());
}

Forest FitRandomForest(const Cohort& train, const ForestParams& params) {
  if (params.n_trees < 1 || params.max_depth < 0 || params.min_leaf < 1 || params.max_bins < 2 ||
      params.max_bins > 65535) {
    throw Error(ErrorCode::kInvalidArgument, "invalid random forest parameters");
  }
  if (train.rows() == 0 || train.cols() == 0) throw Error(ErrorCode::kInvalidArgument, "empty training cohort");
  if (train.CountLabel(1) == 0 || train.CountLabel(0) == 0) {
    throw Error(ErrorCode::kInvalidArgument, "random forest needs both classes");
  }
  if (train.CountMissing() > 0) {
    throw Error(ErrorCode::kInvalidArgument, "random forest input must be imputed");
  }
  const std::size_t d = train.cols();
  std::size_t mtry = params.max_features > 0
                         ? static_cast<std::size_t>(params.max_features)
                         : static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(d))));
  mtry = std::clamp<std::size_t>(mtry, 1, d);
  const BinnedData data = Bin(train, params.max_bins);

  std::vector<ForestTree> trees(static_cast<std::size_t>(params.n_trees));
  ParallelFor(trees.size(), [&](std::size_t t) {
    const std::uint64_t seed = DeriveSeed(params.seed, t);
    Rng rng(seed);
    std::vector<std::size_t> rows(train.rows());
    for (auto& r : rows) r = UniformIndex(rng, train.rows());
    std::sort(rows.begin(), rows.end());
    TreeBuilder builder(data, params, mtry, rng);
    trees[t] = builder.Build(std::move(rows), seed);
  });
  return Forest(train.schema().names(), std::move(trees));
}

ImportanceTable GiniImportance(const Forest& forest) {
  ImportanceTable table;
  table.features = forest.features();
  table.importance.assign(table.features.size(), 0.0);
  for (const auto& tree : forest.trees()) {
    for (const auto& node : tree.nodes) {
      if (node.is_leaf()) continue;
      const ForestNode& l = tree.nodes[node.left];
      const ForestNode& r = tree.nodes[node.right];
      const double n = static_cast<double>(node.samples);
      const double decrease =
          node.gini - (static_cast<double>(l.samples) * l.gini + static_cast<double>(r.samples) * r.gini) / n;
      table.importance[node.feature] += node.weight * std::max(0.0, decrease);
    }
  }
  const double total = std::accumulate(table.importance.begin(), table.importance.end(), 0.0);
  if (total > 0.0) {
    for (double& v : table.importance) v /= total;
  }
  return table;
}

Json ImportanceTable::ToJson() const {
  Json j = Json::array();
  for (std::size_t i = 0; i < features.size(); ++i) {
    j.push_back({{"feature", features[i]}, {"importance", EncodeDouble(importance[i])}});
  }
  return j;
}

}  // namespace hkdrisk
