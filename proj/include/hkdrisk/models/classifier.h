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

#ifndef HKDRISK_MODELS_CLASSIFIER_H_
#define HKDRISK_MODELS_CLASSIFIER_H_

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "hkdrisk/common/json_util.h"
#include "hkdrisk/models/dataset.h"
#include "hkdrisk/models/spec.h"

namespace hkdrisk {

double Sigmoid(double margin);
double LogOdds(double p);

// Uniform inference contract over the four engines. Fitted models are
// immutable; every method is const and safe to call concurrently.
class Classifier {
 public:
  virtual ~Classifier() = default;

  virtual ModelFamily family() const = 0;
  virtual std::size_t num_features() const = 0;
  // Log-odds of the positive class. `x` must hold num_features() values.
  virtual double Margin(std::span<const double> x) const = 0;
  virtual Json ToJson() const = 0;

  // Throw kInvalidArgument on a wrong-length vector.
  double PredictMargin(std::span<const double> x) const;
  double PredictProba(std::span<const double> x) const;
  std::vector<double> PredictProba(const Dataset& data) const;

 protected:
  void CheckDimension(std::size_t got) const;
};

using ClassifierPtr = std::shared_ptr<const Classifier>;

// Fits `spec` on a fully observed dataset containing both classes.
ClassifierPtr TrainClassifier(const ClassifierSpec& spec, const Dataset& data);
ClassifierPtr ClassifierFromJson(const Json& json);

}  // namespace hkdrisk

#endif  // HKDRISK_MODELS_CLASSIFIER_H_
