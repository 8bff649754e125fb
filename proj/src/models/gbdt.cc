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

#include "hkdrisk/models/gbdt.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hkdrisk/common/error.h"
#include "hkdrisk/common/random.h"

namespace hkdrisk {
namespace {

double SoftThreshold(double g, double alpha) {
  if (g > alpha) return g - alpha;
  if (g < -alpha) return g + alpha;
  return 0.0;
}

double Denominator(double h, double lambda) { return std::max(h + lambda, 1e-16); }

double Score(double g, double h, const GbdtParams& p) {
  const double s = SoftThreshold(g, p.reg_alpha);
  return s * s / Denominator(h, p.reg_lambda);
}

double LeafValue(double g, double h, const GbdtParams& p) {
  return -SoftThreshold(g, p.reg_alpha) / Denominator(h, p.reg_lambda);
}

struct Binned {
  std::vector<std::vector<double>> cuts;       // per feature
  std::vector<std::vector<std::uint32_t>> bin;  // per feature, per row
};

Binned BinData(const Dataset& data, const GbdtParams& p) {
  Binned b;
  b.cuts.resize(data.cols);
  b.bin.resize(data.cols);
  std::vector<double> column(data.rows);
  for (std::size_t c = 0; c < data.cols; ++c) {
    for (std::size_t r = 0; r < data.rows; ++r) column[r] = data.at(r, c);
    b.cuts[c] = CandidateCuts(column, p.histogram, p.max_bins);
    auto& bins = b.bin[c];
    bins.resize(data.rows);
    const auto& cuts = b.cuts[c];
    for (std::size_t r = 0; r < data.rows; ++r) {
      bins[r] = static_cast<std::uint32_t>(
          std::lower_bound(cuts.begin(), cuts.end(), column[r]) - cuts.begin());
    }
  }
  return b;
}

class TreeBuilder {
 public:
  TreeBuilder(const Binned& binned, const std::vector<double>& g, const std::vector<double>& h,
              const std::vector<std::size_t>& features, const GbdtParams& p)
      : binned_(binned), g_(g), h_(h), features_(features), p_(p) {}

  RegressionTree Build(std::vector<std::size_t> rows) {
    RegressionTree tree;
    tree.nodes.emplace_back();
    Grow(tree, 0, rows, 0);
    return tree;
  }

 private:
  struct BestSplit {
    double gain = 0.0;
    int feature = -1;
    std::uint32_t cut = 0;
  };

  void Grow(RegressionTree& tree, int node_index, std::vector<std::size_t>& rows, int depth) {
    double G = 0.0, H = 0.0;
    for (std::size_t r : rows) {
      G += g_[r];
      H += h_[r];
    }
    BestSplit best;
    if (depth < p_.max_depth && rows.size() >= 2) best = FindSplit(rows, G, H);
    if (best.feature < 0 || !(best.gain > p_.min_split_gain)) {
      const double v = LeafValue(G, H, p_);
      if (!std::isfinite(v)) throw Error(ErrorCode::kNumeric, "non-finite GBDT leaf value");
      tree.nodes[node_index].value = v;
      return;
    }
    const auto f = static_cast<std::size_t>(best.feature);
    const auto& bins = binned_.bin[f];
    std::vector<std::size_t> left_rows, right_rows;
    for (std::size_t r : rows) (bins[r] <= best.cut ? left_rows : right_rows).push_back(r);
    std::vector<std::size_t>().swap(rows);

    const int left = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    const int right = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    TreeNode& node = tree.nodes[node_index];
    node.feature = best.feature;
    node.threshold = binned_.cuts[f][best.cut];
    node.left = left;
    node.right = right;
    Grow(tree, left, left_rows, depth + 1);
    Grow(tree, right, right_rows, depth + 1);
  }

  BestSplit FindSplit(const std::vector<std::size_t>& rows, double G, double H) {
    BestSplit best;
    const double parent = Score(G, H, p_);
    for (std::size_t f : features_) {
      const auto& cuts = binned_.cuts[f];
      if (cuts.empty()) continue;
      const std::size_t nbins = cuts.size() + 1;
      hist_g_.assign(nbins, 0.0);
      hist_h_.assign(nbins, 0.0);
      hist_n_.assign(nbins, 0);
      const auto& bins = binned_.bin[f];
      for (std::size_t r : rows) {
        const std::uint32_t b = bins[r];
        hist_g_[b] += g_[r];
        hist_h_[b] += h_[r];
        ++hist_n_[b];
      }
      double gl = 0.0, hl = 0.0;
      std::size_t nl = 0;
      for (std::size_t s = 0; s + 1 < nbins; ++s) {
        gl += hist_g_[s];
        hl += hist_h_[s];
        nl += hist_n_[s];
        if (nl == 0) continue;
        if (nl == rows.size()) break;
        const double gr = G - gl, hr = H - hl;
        if (hl < p_.min_child_weight || hr < p_.min_child_weight) continue;
        const double gain = 0.5 * (Score(gl, hl, p_) + Score(gr, hr, p_) - parent);
        if (gain > best.gain) {
          best.gain = gain;
          best.feature = static_cast<int>(f);
          best.cut = static_cast<std::uint32_t>(s);
        }
      }
    }
    return best;
  }

  const Binned& binned_;
  const std::vector<double>& g_;
  const std::vector<double>& h_;
  const std::vector<std::size_t>& features_;
  const GbdtParams& p_;
  std::vector<double> hist_g_, hist_h_;
  std::vector<std::size_t> hist_n_;
};

void AssignCovers(RegressionTree& tree, const Dataset& data) {
  for (auto& node : tree.nodes) node.cover = 0.0;
  for (std::size_t r = 0; r < data.rows; ++r) {
    const auto x = data.row(r);
    int i = 0;
    while (true) {
      TreeNode& node = tree.nodes[i];
      node.cover += 1.0;
      if (node.is_leaf()) break;
      i = x[node.feature] <= node.threshold ? node.left : node.right;
    }
  }
}

Json NodeToJson(const TreeNode& n) {
  return Json::array({n.feature, EncodeDouble(n.threshold), n.left, n.right, EncodeDouble(n.value),
                      EncodeDouble(n.cover)});
}

TreeNode NodeFromJson(const Json& j) {
  if (!j.is_array() || j.size() != 6) throw Error(ErrorCode::kSchema, "malformed tree node", "trees");
  TreeNode n;
  n.feature = j[0].get<int>();
  n.threshold = DecodeDouble(j[1]);
  n.left = j[2].get<int>();
  n.right = j[3].get<int>();
  n.value = DecodeDouble(j[4]);
  n.cover = DecodeDouble(j[5]);
  return n;
}

}  // namespace

int RegressionTree::LeafIndex(std::span<const double> x) const {
  int i = 0;
  while (!nodes[i].is_leaf()) {
    const TreeNode& n = nodes[i];
    i = x[n.feature] <= n.threshold ? n.left : n.right;
  }
  return i;
}

double RegressionTree::Predict(std::span<const double> x) const { return nodes[LeafIndex(x)].value; }

int RegressionTree::depth() const {
  std::vector<int> d(nodes.size(), 0);
  int best = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].is_leaf()) {
      best = std::max(best, d[i]);
      continue;
    }
    d[nodes[i].left] = d[i] + 1;
    d[nodes[i].right] = d[i] + 1;
  }
  return best;
}

GbdtModel::GbdtModel(std::size_t num_features, double base_score, double learning_rate,
                     std::vector<RegressionTree> trees, GbdtParams params)
    : num_features_(num_features),
      base_score_(base_score),
      learning_rate_(learning_rate),
      trees_(std::move(trees)),
      params_(params) {
  params_.learning_rate = learning_rate;
  for (const auto& tree : trees_) {
    const int n = static_cast<int>(tree.nodes.size());
    if (n == 0) throw Error(ErrorCode::kSchema, "empty regression tree", "trees");
    for (const auto& node : tree.nodes) {
      if (node.is_leaf()) {
        if (!std::isfinite(node.value)) throw Error(ErrorCode::kNumeric, "non-finite leaf value", "trees");
        continue;
      }
      if (node.feature >= static_cast<int>(num_features_) || node.left <= 0 || node.right <= 0 ||
          node.left >= n || node.right >= n) {
        throw Error(ErrorCode::kSchema, "tree node references an invalid feature or child", "trees");
      }
    }
  }
}

double GbdtModel::Margin(std::span<const double> x) const {
  return StagedMargin(x, trees_.size());
}

double GbdtModel::StagedMargin(std::span<const double> x, std::size_t stages) const {
  double sum = 0.0;
  const std::size_t n = std::min(stages, trees_.size());
  for (std::size_t t = 0; t < n; ++t) sum += trees_[t].Predict(x);
  return base_score_ + learning_rate_ * sum;
}

GbdtModel GbdtModel::WithCovers(const Dataset& background) const {
  GbdtModel out = *this;
  for (auto& tree : out.trees_) AssignCovers(tree, background);
  return out;
}

Json GbdtModel::ToJson() const {
  Json trees = Json::array();
  for (const auto& tree : trees_) {
    Json nodes = Json::array();
    for (const auto& n : tree.nodes) nodes.push_back(NodeToJson(n));
    trees.push_back(std::move(nodes));
  }
  return {{"family", "gbdt"},
          {"num_features", num_features_},
          {"base_score", EncodeDouble(base_score_)},
          {"learning_rate", EncodeDouble(learning_rate_)},
          {"params", ClassifierSpec{"", params_, 0}.ToJson().at("params")},
          {"trees", std::move(trees)}};
}

GbdtModel GbdtModel::FromJson(const Json& json) {
  std::vector<RegressionTree> trees;
  for (const auto& t : RequireMember(json, "trees")) {
    RegressionTree tree;
    for (const auto& n : t) tree.nodes.push_back(NodeFromJson(n));
    trees.push_back(std::move(tree));
  }
  GbdtParams params;
  if (json.contains("params")) {
    Json spec{{"family", "gbdt"}, {"params", json.at("params")}};
    params = std::get<GbdtParams>(ClassifierSpec::FromJson(spec).params);
  }
  return GbdtModel(RequireMember(json, "num_features").get<std::size_t>(),
                   DecodeDouble(RequireMember(json, "base_score")),
                   DecodeDouble(RequireMember(json, "learning_rate")), std::move(trees), params);
}

std::vector<double> CandidateCuts(std::vector<double> column, bool histogram, int max_bins) {
  std::sort(column.begin(), column.end());
  std::vector<double> distinct;
  std::vector<std::size_t> upto;  // rows with value <= distinct[i]
  for (std::size_t i = 0; i < column.size(); ++i) {
    if (distinct.empty() || column[i] != distinct.back()) {
      distinct.push_back(column[i]);
      upto.push_back(0);
    }
    upto.back() = i + 1;
  }
  std::vector<double> cuts;
  if (distinct.size() < 2) return cuts;
  auto midpoint = [&](std::size_t i) { return distinct[i] + 0.5 * (distinct[i + 1] - distinct[i]); };
  const std::size_t max_cuts = static_cast<std::size_t>(std::max(1, max_bins - 1));
  if (!histogram || distinct.size() - 1 <= max_cuts) {
    for (std::size_t i = 0; i + 1 < distinct.size(); ++i) cuts.push_back(midpoint(i));
    return cuts;
  }
  // Cut after the first distinct value whose cumulative count reaches each
  // quantile k / max_bins.
  const double n = static_cast<double>(column.size());
  std::size_t i = 0;
  for (std::size_t k = 1; k <= max_cuts; ++k) {
    const double target = n * static_cast<double>(k) / static_cast<double>(max_cuts + 1);
    while (i + 1 < distinct.size() && static_cast<double>(upto[i]) < target) ++i;
    if (i + 1 >= distinct.size()) break;
    const double cut = midpoint(i);
    if (cuts.empty() || cut > cuts.back()) cuts.push_back(cut);
  }
  return cuts;
}

GbdtModel FitGbdt(const GbdtParams& params, const Dataset& data, std::uint64_t seed) {
  ClassifierSpec{"gbdt", params, seed}.Validate();
  data.Validate();
  const std::size_t n = data.rows;
  const double prevalence = static_cast<double>(data.positives()) / static_cast<double>(n);
  if (prevalence <= 0.0 || prevalence >= 1.0) {
    throw Error(ErrorCode::kInvalidArgument, "training data must contain both classes", "label");
  }
  const double base = LogOdds(prevalence);
  std::vector<RegressionTree> trees;
  if (params.n_trees == 0) return GbdtModel(data.cols, base, params.learning_rate, {}, params);

  const Binned binned = BinData(data, params);
  std::vector<double> margin(n, base), g(n), h(n);
  std::vector<std::size_t> all_rows(n), all_features(data.cols);
  std::iota(all_rows.begin(), all_rows.end(), 0);
  std::iota(all_features.begin(), all_features.end(), 0);
  const auto n_sub = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(params.subsample * n)));
  const auto n_col = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::lround(params.colsample * static_cast<double>(data.cols))));

  trees.reserve(params.n_trees);
  for (int t = 0; t < params.n_trees; ++t) {
    for (std::size_t r = 0; r < n; ++r) {
      const double p = Sigmoid(margin[r]);
      g[r] = p - data.y[r];
      h[r] = p * (1.0 - p);
    }
    Rng rng(DeriveSeed(seed, static_cast<std::uint64_t>(t)));
    std::vector<std::size_t> rows = all_rows;
    if (n_sub < n) {
      for (std::size_t i = 0; i < n_sub; ++i) std::swap(rows[i], rows[i + UniformIndex(rng, n - i)]);
      rows.resize(n_sub);
      std::sort(rows.begin(), rows.end());
    }
    std::vector<std::size_t> features = all_features;
    if (n_col < data.cols) {
      for (std::size_t i = 0; i < n_col; ++i) {
        std::swap(features[i], features[i + UniformIndex(rng, data.cols - i)]);
      }
      features.resize(n_col);
      std::sort(features.begin(), features.end());
    }
    TreeBuilder builder(binned, g, h, features, params);
    RegressionTree tree = builder.Build(std::move(rows));
    AssignCovers(tree, data);
    for (std::size_t r = 0; r < n; ++r) margin[r] += params.learning_rate * tree.Predict(data.row(r));
    trees.push_back(std::move(tree));
  }
  return GbdtModel(data.cols, base, params.learning_rate, std::move(trees), params);
}

}  // namespace hkdrisk
