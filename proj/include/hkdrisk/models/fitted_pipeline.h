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

#ifndef HKDRISK_MODELS_FITTED_PIPELINE_H_
#define HKDRISK_MODELS_FITTED_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hkdrisk/cohort/cohort.h"
#include "hkdrisk/evaluate/scored_set.h"
#include "hkdrisk/models/classifier.h"
#include "hkdrisk/preprocess/imputer.h"
#include "hkdrisk/preprocess/scaler.h"

namespace hkdrisk {

struct PipelineOptions {
  bool smote = true;
  int smote_k = 5;
  double smote_ratio = 1.0;
  std::uint64_t smote_seed = 0;
};

// Feature selection + imputation + min-max scaling + classifier, all fitted
// on one training cohort. Inputs are natural-unit rows over features(), with
// NaN marking missing values.
class FittedPipeline {
 public:
  FittedPipeline(ClassifierSpec spec, ImputationPlan imputation, ScalingPlan scaling,
                 ClassifierPtr model, std::string training_lineage);

  const ClassifierSpec& spec() const { return spec_; }
  const ImputationPlan& imputation() const { return imputation_; }
  const ScalingPlan& scaling() const { return scaling_; }
  const Classifier& model() const { return *model_; }
  const ClassifierPtr& model_ptr() const { return model_; }
  const FeatureSchema& schema() const { return imputation_.schema; }
  std::vector<std::string> features() const { return imputation_.schema.names(); }
  const std::string& training_lineage() const { return training_lineage_; }

  // Impute then scale one natural-unit row.
  std::vector<double> PrepareRow(std::span<const double> natural) const;
  // Picks features() out of `cohort` by name, imputes and scales.
  Cohort Prepare(const Cohort& cohort) const;
  Dataset Transform(const Cohort& cohort) const;

  double PredictMargin(std::span<const double> natural) const;
  double PredictProba(std::span<const double> natural) const;
  ScoredSet Score(const Cohort& cohort) const;

 private:
  ClassifierSpec spec_;
  ImputationPlan imputation_;
  ScalingPlan scaling_;
  ClassifierPtr model_;
  std::string training_lineage_;
};

// Selects `features` from train, fits imputation and scaling plans, then
// (optionally) SMOTE-balances the scaled rows before training `spec`.
FittedPipeline FitPipeline(const Cohort& train, const std::vector<std::string>& features,
                           const ClassifierSpec& spec, const PipelineOptions& options = {});

// The preprocessed (and, if requested, oversampled) training matrix that
// FitPipeline hands to the engine.
Dataset PrepareTrainingData(const Cohort& train, const std::vector<std::string>& features,
                            const PipelineOptions& options, ImputationPlan* imputation = nullptr,
                            ScalingPlan* scaling = nullptr);

}  // namespace hkdrisk

#endif  // HKDRISK_MODELS_FITTED_PIPELINE_H_
