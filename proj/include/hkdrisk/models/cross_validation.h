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

#ifndef HKDRISK_MODELS_CROSS_VALIDATION_H_
#define HKDRISK_MODELS_CROSS_VALIDATION_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hkdrisk/cohort/cohort.h"
#include "hkdrisk/models/fitted_pipeline.h"
#include "hkdrisk/models/spec.h"

namespace hkdrisk {

struct CvOptions {
  int k = 5;
  std::uint64_t seed = 0;
  // smote_seed is ignored; each fold derives its own from `seed`.
  PipelineOptions pipeline;
};

struct CvCell {
  ClassifierSpec spec;
  std::vector<double> fold_auroc;
  double mean_auroc = 0.0;
  double sd_auroc = 0.0;
};

struct CvResult {
  std::vector<CvCell> cells;  // grid order
  std::size_t best = 0;
  int k = 0;
  std::uint64_t seed = 0;

  const CvCell& best_cell() const { return cells.at(best); }
  Json ToJson() const;
  std::string ToCsv() const;
};

// Stratified k-fold grid search. Every fold refits imputation, scaling and
// SMOTE on its training part only. The best cell maximizes mean validation
// AUROC; exact ties go to the smaller model (ComplexityKey), then to the
// earlier grid position.
CvResult CrossValidateGrid(const Cohort& train, const std::vector<std::string>& features,
                           const std::vector<ClassifierSpec>& grid, const CvOptions& options);

}  // namespace hkdrisk

#endif  // HKDRISK_MODELS_CROSS_VALIDATION_H_
