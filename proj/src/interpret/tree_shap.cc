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

#include <algorithm>
#include <cmath>
#include <string>

#include "hkdrisk/common/error.h"
#include "hkdrisk/interpret/shap.h"

namespace hkdrisk {
namespace {

struct PathElement {
  int feature = -1;
  double zero_fraction = 0.0;
  double one_fraction = 0.0;
  double pweight = 0.0;
};

void ExtendPath(PathElement* path, int depth, double zero_fraction, double one_fraction, int feature) {
  path[depth] = {feature, zero_fraction, one_fraction, depth == 0 ? 1.0 : 0.0};
  for (int i = depth - 1; i >= 0; --i) {
    path[i + 1].pweight += one_fraction * path[i].pweight * (i + 1) / static_cast<double>(depth + 1);
    path[i].pweight = zero_fraction * path[i].pweight * (depth - i) / static_cast<double>(depth + 1);
  }
}

void UnwindPath(PathElement* path, int depth, int index) {
  const double one = path[index].one_fraction, zero = path[index].zero_fraction;
  double next = path[depth].pweight;
  for (int i = depth - 1; i >= 0; --i) {
    if (one != 0.0) {
      const double tmp = path[i].pweight;
      path[i].pweight = next * (depth + 1) / ((i + 1) * one);
      next = tmp - path[i].pweight * zero * (depth - i) / static_cast<double>(depth + 1);
    } else {
      path[i].pweight = path[i].pweight * (depth + 1) / (zero * (depth - i));
    }
  }
  for (int i = index; i < depth; ++i) {
    path[i].feature = path[i + 1].feature;
    path[i].zero_fraction = path[i + 1].zero_fraction;
    path[i].one_fraction = path[i + 1].one_fraction;
  }
}

double UnwoundPathSum(const PathElement* path, int depth, int index) {
  const double one = path[index].one_fraction, zero = path[index].zero_fraction;
  double next = path[depth].pweight, total = 0.0;
  for (int i = depth - 1; i >= 0; --i) {
    if (one != 0.0) {
      const double tmp = next * (depth + 1) / ((i + 1) * one);
      total += tmp;
      next = path[i].pweight - tmp * zero * (depth - i) / static_cast<double>(depth + 1);
    } else if (zero != 0.0) {
      total += path[i].pweight / zero / ((depth - i) / static_cast<double>(depth + 1));
    }
  }
  return total;
}

class TreeExplainer {
 public:
  TreeExplainer(const RegressionTree& tree, std::span<const double> x, double scale, std::vector<double>& phi)
      : tree_(tree), x_(x), scale_(scale), phi_(phi) {
    const int d = tree.depth() + 2;
    buffer_.resize(static_cast<std::size_t>(d * (d + 1) / 2 + d));
  }

  void Run() { Recurse(0, 0, buffer_.data(), 1.0, 1.0, -1); }

 private:
  void Recurse(int node_index, int depth, PathElement* parent_path, double zero_fraction,
               double one_fraction, int feature) {
    PathElement* path = parent_path + depth + 1;
    std::copy(parent_path, parent_path + depth + 1, path);
    ExtendPath(path, depth, zero_fraction, one_fraction, feature);
    const TreeNode& node = tree_.nodes[node_index];
    if (node.is_leaf()) {
      for (int i = 1; i <= depth; ++i) {
        const double w = UnwoundPathSum(path, depth, i);
        const PathElement& el = path[i];
        phi_[el.feature] += w * (el.one_fraction - el.zero_fraction) * node.value * scale_;
      }
      return;
    }
    const bool go_left = x_[node.feature] <= node.threshold;
    const int hot = go_left ? node.left : node.right;
    const int cold = go_left ? node.right : node.left;
    const double cover = node.cover;
    const double hot_zero = cover > 0.0 ? tree_.nodes[hot].cover / cover : 0.0;
    const double cold_zero = cover > 0.0 ? tree_.nodes[cold].cover / cover : 0.0;
    double incoming_zero = 1.0, incoming_one = 1.0;
    int index = 0;
    while (index <= depth && path[index].feature != node.feature) ++index;
    if (index != depth + 1) {
      incoming_zero = path[index].zero_fraction;
      incoming_one = path[index].one_fraction;
      UnwindPath(path, depth, index);
      --depth;
    }
    Recurse(hot, depth + 1, path, hot_zero * incoming_zero, incoming_one, node.feature);
    Recurse(cold, depth + 1, path, cold_zero * incoming_zero, 0.0, node.feature);
  }

  const RegressionTree& tree_;
  std::span<const double> x_;
  double scale_;
  std::vector<double>& phi_;
  std::vector<PathElement> buffer_;
};

double CoverWeightedMean(const RegressionTree& tree, int index) {
  const TreeNode& n = tree.nodes[index];
  if (n.is_leaf()) return n.value;
  const double l = tree.nodes[n.left].cover, r = tree.nodes[n.right].cover;
  if (l + r <= 0.0) return 0.0;
  return (l * CoverWeightedMean(tree, n.left) + r * CoverWeightedMean(tree, n.right)) / (l + r);
}

}  // namespace

double TreeShapBase(const GbdtModel& model) {
  double sum = 0.0;
  for (const auto& tree : model.trees()) sum += CoverWeightedMean(tree, 0);
  return model.base_score() + model.learning_rate() * sum;
}

ShapAttribution TreeShap(const GbdtModel& model, std::span<const double> x) {
  ShapAttribution out;
  out.output = model.PredictMargin(x);
  out.phi.assign(model.num_features(), 0.0);
  for (const auto& tree : model.trees()) {
    TreeExplainer(tree, x, model.learning_rate(), out.phi).Run();
  }
  out.base = TreeShapBase(model);
  out.space = ShapSpace::kLogOdds;
  return out;
}

ShapAttribution TreeShap(const Classifier& model, std::span<const double> x) {
  const auto* gbdt = dynamic_cast<const GbdtModel*>(&model);
  if (!gbdt) {
    throw Error(ErrorCode::kInvalidArgument,
                "TreeShap needs a gbdt model; use ExactShapBruteForce for " +
                    std::string(ModelFamilyName(model.family())) + " models",
                "family");
  }
  return TreeShap(*gbdt, x);
}

}  // namespace hkdrisk
