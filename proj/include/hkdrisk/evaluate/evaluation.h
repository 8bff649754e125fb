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

#ifndef HKDRISK_EVALUATE_EVALUATION_H_
#define HKDRISK_EVALUATE_EVALUATION_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hkdrisk/common/json_util.h"
#include "hkdrisk/evaluate/bootstrap.h"
#include "hkdrisk/evaluate/comparison.h"
#include "hkdrisk/evaluate/metrics.h"
#include "hkdrisk/evaluate/roc.h"
#include "hkdrisk/evaluate/threshold.h"

namespace hkdrisk {

struct EvaluationOptions {
  double min_sensitivity = kDefaultMinSensitivity;
  // When set, used instead of selecting a threshold on the scored set.
  std::optional<double> fixed_threshold;
  int n_boot = kDefaultBootstrapResamples;
  std::uint64_t seed = 0;
};

struct ModelEvaluation {
  std::string model;
  std::size_t n = 0;
  std::size_t positives = 0;
  MetricsRow metrics;
  BootstrapCi ci;
  std::vector<RocPoint> roc;

  double prevalence() const { return n == 0 ? 0.0 : static_cast<double>(positives) / n; }
  Json ToJson() const;
};

// AUROC with bootstrap CI, threshold (selected or fixed), point metrics and
// the ROC curve.
ModelEvaluation EvaluateScoredSet(const std::string& model, const ScoredSet& scored,
                                  const EvaluationOptions& options);

struct NamedComparison {
  std::string name;
  ComparisonTable table;
};

struct EvaluationReport {
  std::vector<ModelEvaluation> models;
  std::vector<NamedComparison> comparisons;

  Json ToJson() const;
  // One row per model.
  std::string MetricsCsv() const;
  // model,threshold,fpr,tpr rows.
  std::string RocCsv() const;
};

}  // namespace hkdrisk

#endif  // HKDRISK_EVALUATE_EVALUATION_H_
