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

#ifndef HKDRISK_MODELS_LOGISTIC_H_
#define HKDRISK_MODELS_LOGISTIC_H_

#include <cstddef>
#include <span>
#include <vector>

#include "hkdrisk/models/classifier.h"

namespace hkdrisk {

class LinearModel final : public Classifier {
 public:
  LinearModel(std::vector<double> weights, double intercept, Penalty penalty = Penalty::kL2,
              double C = 1.0);

  ModelFamily family() const override { return ModelFamily::kLogistic; }
  std::size_t num_features() const override { return weights_.size(); }
  double Margin(std::span<const double> x) const override;
  Json ToJson() const override;
  static LinearModel FromJson(const Json& json);

  const std::vector<double>& weights() const { return weights_; }
  double intercept() const { return intercept_; }
  Penalty penalty() const { return penalty_; }
  double C() const { return C_; }
  // Number of optimizer iterations used and the final optimality violation.
  int iterations() const { return iterations_; }
  double violation() const { return violation_; }
  std::size_t CountZeroWeights() const;

 private:
  friend LinearModel FitLogistic(const LogisticParams& params, const Dataset& data);
  std::vector<double> weights_;
  double intercept_;
  Penalty penalty_;
  double C_;
  int iterations_ = 0;
  double violation_ = 0.0;
};

// Minimizes R(w) + C * sum_i logloss_i, with R = ||w||^2 / 2 (L2) or ||w||_1
// (L1) and an unpenalized intercept. Proximal Newton: each outer step solves
// the penalized quadratic model by coordinate descent, then backtracks.
// Stops when the minimum-norm subgradient has sup norm <= tolerance relative
// to its value at w = 0 (floored at 1). Warns when max_iter is reached.
LinearModel FitLogistic(const LogisticParams& params, const Dataset& data);

}  // namespace hkdrisk

#endif  // HKDRISK_MODELS_LOGISTIC_H_
