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

#ifndef HKDRISK_INTERPRET_ABLATION_H_
#define HKDRISK_INTERPRET_ABLATION_H_

#include <cstdint>
#include <string>
#include <vector>

#include "hkdrisk/cohort/cohort.h"
#include "hkdrisk/models/fitted_pipeline.h"

namespace hkdrisk {

struct AblationOptions {
  PipelineOptions pipeline;
  // Paired stratified bootstrap of the test set for the delta spread.
  int n_boot = 200;
  std::uint64_t seed = 0;
};

struct AblationRow {
  std::string removed;  // empty for the baseline
  double auroc = 0.0;
  double delta = 0.0;  // auroc - baseline
  double delta_sd = 0.0;
  double delta_lo = 0.0;  // 2.5th percentile of the paired bootstrap delta
  double delta_hi = 0.0;  // 97.5th percentile
};

struct AblationResult {
  double baseline_auroc = 0.0;
  std::vector<AblationRow> rows;  // baseline first, then by delta ascending

  const AblationRow* Find(const std::string& removed) const;
  Json ToJson() const;
  std::string ToCsv() const;
};

// Retrains `spec` (same seed and hyperparameters) on train minus each
// feature and scores test. When `baseline` is given it must have been fitted
// on `features` and is used as the full model instead of refitting.
AblationResult AblationStudy(const Cohort& train, const Cohort& test,
                             const std::vector<std::string>& features, const ClassifierSpec& spec,
                             const AblationOptions& options = {},
                             const FittedPipeline* baseline = nullptr);

}  // namespace hkdrisk

#endif  // HKDRISK_INTERPRET_ABLATION_H_
