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

#include "hkdrisk/models/fitted_pipeline.h"

#include <string>

#include "hkdrisk/common/error.h"
#include "hkdrisk/preprocess/smote.h"

namespace hkdrisk {

FittedPipeline::FittedPipeline(ClassifierSpec spec, ImputationPlan imputation, ScalingPlan scaling,
                               ClassifierPtr model, std::string training_lineage)
    : spec_(std::move(spec)),
      imputation_(std::move(imputation)),
      scaling_(std::move(scaling)),
      model_(std::move(model)),
      training_lineage_(std::move(training_lineage)) {
  if (!model_) throw Error(ErrorCode::kInvalidArgument, "pipeline has no model");
  if (!(imputation_.schema == scaling_.schema)) {
    throw Error(ErrorCode::kIntegrity, "imputation and scaling plans cover different features");
  }
  if (model_->num_features() != imputation_.schema.size()) {
    throw Error(ErrorCode::kIntegrity, "model dimension does not match the preprocessing plans");
  }
}

std::vector<double> FittedPipeline::PrepareRow(std::span<const double> natural) const {
  if (natural.size() != schema().size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "row has " + std::to_string(natural.size()) + " values, pipeline expects " +
                    std::to_string(schema().size()));
  }
  std::vector<double> row(natural.begin(), natural.end());
  ImputeRow(imputation_, row);
  ScaleRow(scaling_, row);
  return row;
}

Cohort FittedPipeline::Prepare(const Cohort& cohort) const {
  const Cohort selected = cohort.SelectFeatures(features());
  return ApplyMinMax(scaling_, ApplyImputer(imputation_, selected));
}

Dataset FittedPipeline::Transform(const Cohort& cohort) const {
  return Dataset::FromCohort(Prepare(cohort));
}

double FittedPipeline::PredictMargin(std::span<const double> natural) const {
  return model_->PredictMargin(PrepareRow(natural));
}

double FittedPipeline::PredictProba(std::span<const double> natural) const {
  return model_->PredictProba(PrepareRow(natural));
}

ScoredSet FittedPipeline::Score(const Cohort& cohort) const {
  const Dataset data = Transform(cohort);
  ScoredSet scored;
  scored.scores = model_->PredictProba(data);
  scored.labels = cohort.labels();
  scored.ids = cohort.row_ids();
  return scored;
}

Dataset PrepareTrainingData(const Cohort& train, const std::vector<std::string>& features,
                            const PipelineOptions& options, ImputationPlan* imputation,
                            ScalingPlan* scaling) {
  const Cohort selected = train.SelectFeatures(features);
  ImputationPlan imp = FitImputer(selected);
  const Cohort imputed = ApplyImputer(imp, selected);
  ScalingPlan sc = FitMinMax(imputed);
  Cohort scaled = ApplyMinMax(sc, imputed);
  if (options.smote) {
    SmoteOptions so;
    so.k = options.smote_k;
    so.target_ratio = options.smote_ratio;
    so.seed = options.smote_seed;
    scaled = SmoteOversample(scaled, so).cohort;
  }
  if (imputation) *imputation = std::move(imp);
  if (scaling) *scaling = std::move(sc);
  return Dataset::FromCohort(scaled);
}

FittedPipeline FitPipeline(const Cohort& train, const std::vector<std::string>& features,
                           const ClassifierSpec& spec, const PipelineOptions& options) {
  if (features.empty()) throw Error(ErrorCode::kInvalidArgument, "no features to train on", "features");
  ImputationPlan imputation;
  ScalingPlan scaling;
  const Dataset data = PrepareTrainingData(train, features, options, &imputation, &scaling);
  ClassifierPtr model = TrainClassifier(spec, data);
  return FittedPipeline(spec, std::move(imputation), std::move(scaling), std::move(model),
                        train.lineage());
}

}  // namespace hkdrisk
