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

#include "hkdrisk/interpret/ablation.h"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "hkdrisk/common/error.h"
#include "hkdrisk/common/parallel.h"
#include "hkdrisk/common/random.h"
#include "hkdrisk/common/stats.h"
#include "hkdrisk/evaluate/roc.h"

namespace hkdrisk {
namespace {

std::vector<std::size_t> AscendingOrder(const std::vector<double>& scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  return order;
}

// Class-stratified multiplicity weights for resample b.
std::vector<std::uint32_t> ResampleWeights(const std::vector<int>& labels, std::uint64_t seed, std::size_t b) {
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < labels.size(); ++i) (labels[i] ? pos : neg).push_back(i);
  Rng rng(DeriveSeed(seed, b));
  std::vector<std::uint32_t> w(labels.size(), 0);
  for (std::size_t i = 0; i < pos.size(); ++i) ++w[pos[UniformIndex(rng, pos.size())]];
  for (std::size_t i = 0; i < neg.size(); ++i) ++w[neg[UniformIndex(rng, neg.size())]];
  return w;
}

}  // namespace

const AblationRow* AblationResult::Find(const std::string& removed) const {
  for (const auto& r : rows) {
    if (r.removed == removed) return &r;
  }
  return nullptr;
}

Json AblationResult::ToJson() const {
  Json rows_json = Json::array();
  for (const auto& r : rows) {
    rows_json.push_back({{"removed", r.removed.empty() ? Json() : Json(r.removed)},
                         {"auroc", EncodeDouble(r.auroc)},
                         {"delta", EncodeDouble(r.delta)},
                         {"delta_sd", EncodeDouble(r.delta_sd)},
                         {"delta_lo", EncodeDouble(r.delta_lo)},
                         {"delta_hi", EncodeDouble(r.delta_hi)}});
  }
  return {{"baseline_auroc", EncodeDouble(baseline_auroc)}, {"rows", rows_json}};
}

std::string AblationResult::ToCsv() const {
  std::ostringstream out;
  out << "removed,auroc,delta,delta_sd,delta_lo,delta_hi\n";
  for (const auto& r : rows) {
    out << '"' << (r.removed.empty() ? "(baseline)" : r.removed) << "\"," << EncodeDouble(r.auroc) << ','
        << EncodeDouble(r.delta) << ',' << EncodeDouble(r.delta_sd) << ',' << EncodeDouble(r.delta_lo)
        << ',' << EncodeDouble(r.delta_hi) << '\n';
  }
  return out.str();
}

AblationResult AblationStudy(const Cohort& train, const Cohort& test,
                             const std::vector<std::string>& features, const ClassifierSpec& spec,
                             const AblationOptions& options, const FittedPipeline* baseline) {
  if (features.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "ablation needs at least two features (cannot remove the only one)",
                "features");
  }
  for (const auto& f : features) train.schema().RequireIndex(f);
  if (baseline && baseline->features() != features) {
    throw Error(ErrorCode::kInvalidArgument, "baseline pipeline was fitted on a different feature list");
  }
  const std::size_t d = features.size();
  // Index 0 is the full model, i > 0 drops features[i - 1].
  std::vector<std::vector<double>> scores(d + 1);
  ParallelFor(d + 1, [&](std::size_t i) {
    if (i == 0 && baseline) {
      scores[0] = baseline->Score(test).scores;
      return;
    }
    std::vector<std::string> kept;
    for (std::size_t j = 0; j < d; ++j) {
      if (j + 1 != i) kept.push_back(features[j]);
    }
    scores[i] = FitPipeline(train, kept, spec, options.pipeline).Score(test).scores;
  });

  const std::vector<int>& labels = test.labels();
  std::vector<std::vector<std::size_t>> orders(d + 1);
  AblationResult result;
  std::vector<double> auc(d + 1);
  for (std::size_t i = 0; i <= d; ++i) {
    auc[i] = RocAuc(scores[i], labels);
    orders[i] = AscendingOrder(scores[i]);
  }
  result.baseline_auroc = auc[0];

  const auto n_boot = static_cast<std::size_t>(std::max(0, options.n_boot));
  std::vector<std::vector<double>> deltas(d + 1, std::vector<double>(n_boot));
  ParallelFor(n_boot, [&](std::size_t b) {
    const auto w = ResampleWeights(labels, options.seed, b);
    const double base = WeightedRocAuc(scores[0], labels, orders[0], w);
    for (std::size_t i = 1; i <= d; ++i) deltas[i][b] = WeightedRocAuc(scores[i], labels, orders[i], w) - base;
  });

  std::vector<AblationRow> dropped;
  for (std::size_t i = 1; i <= d; ++i) {
    AblationRow row;
    row.removed = features[i - 1];
    row.auroc = auc[i];
    row.delta = auc[i] - auc[0];
    if (n_boot >= 2) {
      row.delta_sd = SampleSd(deltas[i]);
      row.delta_lo = Quantile(deltas[i], 0.025);
      row.delta_hi = Quantile(deltas[i], 0.975);
    }
    dropped.push_back(row);
  }
  std::stable_sort(dropped.begin(), dropped.end(),
                   [](const AblationRow& a, const AblationRow& b) { return a.delta < b.delta; });
  result.rows.push_back({"", auc[0], 0.0, 0.0, 0.0, 0.0});
  result.rows.insert(result.rows.end(), dropped.begin(), dropped.end());
  return result;
}

}  // namespace hkdrisk
