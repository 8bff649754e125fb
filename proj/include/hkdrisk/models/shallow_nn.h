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

#ifndef HKDRISK_MODELS_SHALLOW_NN_H_
#define HKDRISK_MODELS_SHALLOW_NN_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hkdrisk/models/classifier.h"

namespace hkdrisk {

// One ReLU hidden layer feeding a single logit.
struct NnWeights {
  std::size_t inputs = 0;
  std::size_t hidden = 0;
  std::vector<double> w1;  // hidden x inputs, row-major
  std::vector<double> b1;  // hidden
  std::vector<double> w2;  // hidden
  double b2 = 0.0;

  std::size_t size() const { return w1.size() + b1.size() + w2.size() + 1; }
  // Parameters in the order w1, b1, w2, b2.
  std::vector<double> Flatten() const;
  static NnWeights Unflatten(std::size_t inputs, std::size_t hidden, std::span<const double> flat);
  double Logit(std::span<const double> x) const;
};

// Mean binary cross-entropy over `rows` of data, and its gradient in
// Flatten() order. No dropout.
double NnLoss(const NnWeights& weights, const Dataset& data, std::span<const std::size_t> rows);
std::vector<double> NnLossGradient(const NnWeights& weights, const Dataset& data,
                                   std::span<const std::size_t> rows);

class NnModel final : public Classifier {
 public:
  NnModel(NnWeights weights, ShallowNnParams params = {}, std::uint64_t seed = 0);

  ModelFamily family() const override { return ModelFamily::kShallowNn; }
  std::size_t num_features() const override { return weights_.inputs; }
  double Margin(std::span<const double> x) const override { return weights_.Logit(x); }
  Json ToJson() const override;
  static NnModel FromJson(const Json& json);

  const NnWeights& weights() const { return weights_; }
  const ShallowNnParams& params() const { return params_; }
  std::uint64_t seed() const { return seed_; }
  // Mean training loss after each epoch.
  const std::vector<double>& loss_history() const { return loss_history_; }

 private:
  friend NnModel FitShallowNn(const ShallowNnParams& params, const Dataset& data, std::uint64_t seed);
  NnWeights weights_;
  ShallowNnParams params_;
  std::uint64_t seed_;
  std::vector<double> loss_history_;
};

// He-initialized weights, Adam on mini-batch binary cross-entropy with
// inverted dropout on the hidden layer. Throws kDivergence when the loss
// stops being finite.
NnModel FitShallowNn(const ShallowNnParams& params, const Dataset& data, std::uint64_t seed);

}  // namespace hkdrisk

#endif  // HKDRISK_MODELS_SHALLOW_NN_H_
