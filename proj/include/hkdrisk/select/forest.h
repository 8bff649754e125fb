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

#ifndef HKDRISK_SELECT_FOREST_H_
#define HKDRISK_SELECT_FOREST_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hkdrisk/cohort/cohort.h"
#include "hkdrisk/common/json_util.h"

namespace hkdrisk {

struct ForestParams {
  int n_trees = 500;
  int max_depth = 12;
  int min_leaf = 5;
  // Features tried per split; 0 means floor(sqrt(d)).
  int max_features = 0;
  // Maximum split candidates per feature (training quantiles).
  int max_bins = 256;
  std::uint64_t seed = 0;
};

struct ForestNode {
  int feature = -1;  // -1 for leaves
  double threshold = 0.0;  // rows with x <= threshold go left
  int left = -1;
  int right = -1;
  // Share of the tree's bootstrap sample reaching this node.
  double weight = 0.0;
  double gini = 0.0;
  std::size_t samples = 0;
  // Class shares of the rows reaching this node.
  std::array<double, 2> class_share{0.0, 0.0};

  bool is_leaf() const { return feature < 0; }
};

struct ForestTree {
  std::vector<ForestNode> nodes;  // nodes[0] is the root
  std::uint64_t seed = 0;
};

class Forest {
 public:
  Forest() = default;
  Forest(std::vector<std::string> features, std::vector<ForestTree> trees)
      : features_(std::move(features)), trees_(std::move(trees)) {}

  const std::vector<std::string>& features() const { return features_; }
  const std::vector<ForestTree>& trees() const { return trees_; }
  // Mean leaf positive share across trees.
  double PredictProba(std::span<const double> row) const;

 private:
  std::vector<std::string> features_;
  std::vector<ForestTree> trees_;
};

// Bagged Gini trees with sqrt(d) features per split. Ties in split quality go
// to the lowest feature index, then the lowest threshold. Requires both
// classes and no missing cells.
Forest FitRandomForest(const Cohort& train, const ForestParams& params);

struct ImportanceTable {
  std::vector<std::string> features;
  // Sum over trees and split nodes of weight * gini decrease, normalized to
  // sum to 1. All zero when no tree made a split.
  std::vector<double> importance;

  Json ToJson() const;
};

ImportanceTable GiniImportance(const Forest& forest);

}  // namespace hkdrisk

#endif  // HKDRISK_SELECT_FOREST_H_
