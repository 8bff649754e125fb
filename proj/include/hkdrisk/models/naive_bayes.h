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

#ifndef HKDRISK_MODELS_NAIVE_BAYES_H_
#define HKDRISK_MODELS_NAIVE_BAYES_H_

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "hkdrisk/models/classifier.h"

namespace hkdrisk {

// Per class c: prior[c]; continuous features carry a Gaussian (mean, var),
// binary features a Bernoulli rate.
class NbModel final : public Classifier {
 public:
  struct ClassParams {
    double prior = 0.5;
    std::vector<double> mean;  // rate for binary features
    std::vector<double> var;   // unused for binary features
  };

  NbModel(std::vector<FeatureKind> kinds, std::array<ClassParams, 2> classes, double var_floor);

  ModelFamily family() const override { return ModelFamily::kNaiveBayes; }
  std::size_t num_features() const override { return kinds_.size(); }
  // log P(y=1 | x) - log P(y=0 | x).
  double Margin(std::span<const double> x) const override;
  Json ToJson() const override;
  static NbModel FromJson(const Json& json);

  const std::array<ClassParams, 2>& classes() const { return classes_; }
  const std::vector<FeatureKind>& kinds() const { return kinds_; }
  double var_floor() const { return var_floor_; }
  // Same model with every Gaussian variance multiplied by `factor`.
  NbModel WithVarianceScale(double factor) const;

 private:
  std::vector<FeatureKind> kinds_;
  std::array<ClassParams, 2> classes_;
  double var_floor_;
};

// Maximum-likelihood moments per class. Each Gaussian variance gets
// var_smoothing * (largest per-feature variance) added; Bernoulli rates are
// (k + alpha) / (n + 2 alpha).
NbModel FitNaiveBayes(const NaiveBayesParams& params, const Dataset& data);

}  // namespace hkdrisk

#endif  // HKDRISK_MODELS_NAIVE_BAYES_H_
