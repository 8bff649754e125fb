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

#ifndef HKDRISK_TESTS_SHAP_FIXTURES_H_
#define HKDRISK_TESTS_SHAP_FIXTURES_H_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "hkdrisk/common/random.h"
#include "hkdrisk/models/dataset.h"
#include "hkdrisk/models/gbdt.h"

namespace hkdrisk::testing {

// Every combination of the values 0..levels-1 over d features.
inline Dataset CartesianGrid(std::size_t d, int levels) {
  Dataset data;
  data.cols = d;
  data.kinds.assign(d, FeatureKind::kContinuous);
  std::size_t total = 1;
  for (std::size_t j = 0; j < d; ++j) total *= static_cast<std::size_t>(levels);
  data.rows = total;
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t rest = i;
    for (std::size_t j = 0; j < d; ++j) {
      data.x.push_back(static_cast<double>(rest % levels));
      rest /= static_cast<std::size_t>(levels);
    }
    data.y.push_back(static_cast<int>(i % 2));
  }
  return data;
}

// Random tree whose thresholds sit between grid values inside the region a
// node already covers, so every node keeps a nonzero grid cover.
inline void GrowRandomTree(RegressionTree& tree, int index, std::vector<std::pair<int, int>> box,
                           int depth, int max_depth, Rng& rng) {
  std::vector<int> splittable;
  for (std::size_t j = 0; j < box.size(); ++j) {
    if (box[j].second > box[j].first) splittable.push_back(static_cast<int>(j));
  }
  if (depth == max_depth || splittable.empty()) {
    tree.nodes[index].value = StandardNormal(rng);
    return;
  }
  const int f = splittable[UniformIndex(rng, splittable.size())];
  const int span = box[f].second - box[f].first;
  const int k = box[f].first + static_cast<int>(UniformIndex(rng, static_cast<std::size_t>(span)));
  const int left = static_cast<int>(tree.nodes.size());
  tree.nodes.emplace_back();
  tree.nodes.emplace_back();
  tree.nodes[index].feature = f;
  tree.nodes[index].threshold = k + 0.5;
  tree.nodes[index].left = left;
  tree.nodes[index].right = left + 1;
  auto lbox = box, rbox = box;
  lbox[f].second = k;
  rbox[f].first = k + 1;
  GrowRandomTree(tree, left, lbox, depth + 1, max_depth, rng);
  GrowRandomTree(tree, left + 1, rbox, depth + 1, max_depth, rng);
}

// Small random ensemble over d features with covers taken from `grid`.
inline GbdtModel RandomGridEnsemble(std::size_t d, int levels, const Dataset& grid, std::uint64_t seed,
                                    int n_trees = 3, int max_depth = 3) {
  Rng rng(seed);
  std::vector<RegressionTree> trees;
  for (int t = 0; t < n_trees; ++t) {
    RegressionTree tree;
    tree.nodes.emplace_back();
    GrowRandomTree(tree, 0, std::vector<std::pair<int, int>>(d, {0, levels - 1}), 0, max_depth, rng);
    trees.push_back(std::move(tree));
  }
  return GbdtModel(d, 0.2 * StandardNormal(rng), 0.3, std::move(trees)).WithCovers(grid);
}

}  // namespace hkdrisk::testing

#endif  // HKDRISK_TESTS_SHAP_FIXTURES_H_
