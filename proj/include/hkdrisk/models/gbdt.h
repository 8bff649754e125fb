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

#ifndef HKDRISK_MODELS_GBDT_H_
#define HKDRISK_MODELS_GBDT_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hkdrisk/models/classifier.h"

namespace hkdrisk {

// Internal nodes send x[feature] <= threshold to `left`. Leaves have
// feature == -1 and carry `value` (raw Newton step, before the learning
// rate). `cover` is the number of training rows reaching the node.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;
  double cover = 0.0;

  bool is_leaf() const { return feature < 0; }
  bool operator==(const TreeNode&) const = default;
};

struct RegressionTree {
  std::vector<TreeNode> nodes;  // root first

  // Value of the leaf reached by x.
  double Predict(std::span<const double> x) const;
  int LeafIndex(std::span<const double> x) const;
  int depth() const;
  bool operator==(const RegressionTree&) const = default;
};

class GbdtModel final : public Classifier {
 public:
  GbdtModel(std::size_t num_features, double base_score, double learning_rate,
            std::vector<RegressionTree> trees, GbdtParams params = {});

  ModelFamily family() const override { return ModelFamily::kGbdt; }
  std::size_t num_features() const override { return num_features_; }
  // base + eta * sum of leaf values.
  double Margin(std::span<const double> x) const override;
  Json ToJson() const override;
  static GbdtModel FromJson(const Json& json);

  double base_score() const { return base_score_; }
  double learning_rate() const { return learning_rate_; }
  const std::vector<RegressionTree>& trees() const { return trees_; }
  const GbdtParams& params() const { return params_; }

  // Replaces every node cover by the number of `background` rows reaching it.
  GbdtModel WithCovers(const Dataset& background) const;
  // Margin after the first `stages` trees.
  double StagedMargin(std::span<const double> x, std::size_t stages) const;

 private:
  std::size_t num_features_;
  double base_score_;
  double learning_rate_;
  std::vector<RegressionTree> trees_;
  GbdtParams params_;
};

// Newton boosting on logistic deviance: per stage g = p - y, h = p (1 - p),
// leaf value -soft(G, alpha) / (H + lambda), where soft is L1 soft
// thresholding. Base score is the log-odds of training prevalence.
GbdtModel FitGbdt(const GbdtParams& params, const Dataset& data, std::uint64_t seed);

// Split candidates for one column: midpoints between adjacent distinct
// values, thinned to at most max_bins - 1 cuts at training quantiles when
// `histogram` is set.
std::vector<double> CandidateCuts(std::vector<double> column, bool histogram, int max_bins);

}  // namespace hkdrisk

#endif  // HKDRISK_MODELS_GBDT_H_
