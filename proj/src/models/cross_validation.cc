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

#include "hkdrisk/models/cross_validation.h"

#include <cmath>
#include <sstream>

#include "hkdrisk/cohort/split.h"
#include "hkdrisk/common/error.h"
#include "hkdrisk/common/parallel.h"
#include "hkdrisk/common/random.h"
#include "hkdrisk/common/stats.h"
#include "hkdrisk/evaluate/roc.h"

namespace hkdrisk {

Json CvResult::ToJson() const {
  Json cells_json = Json::array();
  for (const auto& c : cells) {
    cells_json.push_back({{"spec", c.spec.ToJson()},
                          {"fold_auroc", EncodeDoubles(c.fold_auroc)},
                          {"mean_auroc", EncodeDouble(c.mean_auroc)},
                          {"sd_auroc", EncodeDouble(c.sd_auroc)}});
  }
  return {{"k", k}, {"seed", seed}, {"best", best}, {"cells", cells_json}};
}

std::string CvResult::ToCsv() const {
  std::ostringstream out;
  out << "cell,name,params,mean_auroc,sd_auroc";
  for (int f = 0; f < k; ++f) out << ",fold" << f + 1;
  out << ",best\n";
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& c = cells[i];
    out << i << ',' << c.spec.name << ",\"" << c.spec.Describe() << "\"," << EncodeDouble(c.mean_auroc)
        << ',' << EncodeDouble(c.sd_auroc);
    for (double a : c.fold_auroc) out << ',' << EncodeDouble(a);
    out << ',' << (i == best ? 1 : 0) << '\n';
  }
  return out.str();
}

CvResult CrossValidateGrid(const Cohort& train, const std::vector<std::string>& features,
                           const std::vector<ClassifierSpec>& grid, const CvOptions& options) {
  if (grid.empty()) throw Error(ErrorCode::kInvalidArgument, "hyperparameter grid is empty", "grid");
  if (options.k < 2) throw Error(ErrorCode::kInvalidArgument, "cross-validation needs k >= 2", "k");
  for (const auto& spec : grid) spec.Validate();

  const std::vector<int> fold_of = StratifiedFolds(train.labels(), options.k, options.seed);
  const auto k = static_cast<std::size_t>(options.k);
  std::vector<Cohort> fit_parts(k), held_parts(k);
  for (std::size_t f = 0; f < k; ++f) {
    std::vector<std::size_t> fit, held;
    for (std::size_t r = 0; r < train.rows(); ++r) {
      (fold_of[r] == static_cast<int>(f) ? held : fit).push_back(r);
    }
    held_parts[f] = train.SelectRows(held);
    const std::size_t pos = held_parts[f].CountLabel(1);
    if (pos == 0 || pos == held.size()) {
      throw Error(ErrorCode::kStratification,
                  "validation fold " + std::to_string(f + 1) + " contains a single class", "k");
    }
    fit_parts[f] = train.SelectRows(fit);
  }

  CvResult result;
  result.k = options.k;
  result.seed = options.seed;
  result.cells.resize(grid.size());
  std::vector<double> auc(grid.size() * k);
  ParallelFor(grid.size() * k, [&](std::size_t job) {
    const std::size_t cell = job / k, f = job % k;
    PipelineOptions po = options.pipeline;
    po.smote_seed = DeriveSeed(options.seed, f);
    const FittedPipeline fitted = FitPipeline(fit_parts[f], features, grid[cell], po);
    auc[job] = RocAuc(fitted.Score(held_parts[f]));
  });

  for (std::size_t i = 0; i < grid.size(); ++i) {
    CvCell& c = result.cells[i];
    c.spec = grid[i];
    c.fold_auroc.assign(auc.begin() + i * k, auc.begin() + (i + 1) * k);
    double sum = 0.0;
    for (double a : c.fold_auroc) sum += a;
    c.mean_auroc = sum / static_cast<double>(k);
    c.sd_auroc = SampleSd(c.fold_auroc);
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double a = result.cells[i].mean_auroc, b = result.cells[best].mean_auroc;
    if (a > b || (a == b && ComplexityKey(grid[i]) < ComplexityKey(grid[best]))) best = i;
  }
  result.best = best;
  return result;
}

}  // namespace hkdrisk
