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

#ifndef HKDRISK_MODELS_SPEC_H_
#define HKDRISK_MODELS_SPEC_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hkdrisk/common/json_util.h"

namespace hkdrisk {

enum class ModelFamily { kGbdt, kLogistic, kNaiveBayes, kShallowNn };

std::string_view ModelFamilyName(ModelFamily family);
ModelFamily ParseModelFamily(std::string_view name);

struct GbdtParams {
  int n_trees = 200;
  int max_depth = 4;
  double learning_rate = 0.1;
  double reg_lambda = 1.0;  // L2 penalty on leaf values
  double reg_alpha = 0.0;   // L1 penalty on leaf values
  double min_child_weight = 1.0;  // minimum hessian sum per child
  double min_split_gain = 0.0;
  double subsample = 1.0;  // row fraction per tree, without replacement
  double colsample = 1.0;  // feature fraction per tree
  bool histogram = true;   // false: every distinct value is a split candidate
  int max_bins = 256;

  bool operator==(const GbdtParams&) const = default;
};

enum class Penalty { kL1, kL2 };

struct LogisticParams {
  Penalty penalty = Penalty::kL2;
  double C = 1.0;  // inverse regularization strength
  double tolerance = 1e-6;
  int max_iter = 200;

  bool operator==(const LogisticParams&) const = default;
};

struct NaiveBayesParams {
  // Added to every Gaussian variance, as a fraction of the largest variance.
  double var_smoothing = 1e-9;
  // Laplace pseudo-count for Bernoulli rates.
  double alpha = 1.0;

  bool operator==(const NaiveBayesParams&) const = default;
};

struct ShallowNnParams {
  int hidden = 32;
  double learning_rate = 1e-3;
  double dropout = 0.0;
  int batch_size = 32;
  int epochs = 100;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  bool operator==(const ShallowNnParams&) const = default;
};

using FamilyParams = std::variant<GbdtParams, LogisticParams, NaiveBayesParams, ShallowNnParams>;

// A trainable configuration: family hyperparameters plus seed. `name` labels
// the configuration in reports ("catboost", "logistic_l1", ...).
struct ClassifierSpec {
  std::string name;
  FamilyParams params;
  std::uint64_t seed = 0;

  ModelFamily family() const;
  // Throws kInvalidArgument naming the offending hyperparameter.
  void Validate() const;
  Json ToJson() const;
  static ClassifierSpec FromJson(const Json& json);
  // Short human-readable hyperparameter listing.
  std::string Describe() const;

  bool operator==(const ClassifierSpec&) const = default;
};

// The three boosting flavours stand in for CatBoost, LightGBM and XGBoost:
// same engine, different engineering choices (depth, sampling, L1/L2, splits).
ClassifierSpec CatBoostLike(std::uint64_t seed = 0);
ClassifierSpec LightGbmLike(std::uint64_t seed = 0);
ClassifierSpec XgBoostLike(std::uint64_t seed = 0);
ClassifierSpec LogisticBaseline(std::uint64_t seed = 0);
ClassifierSpec NaiveBayesBaseline(std::uint64_t seed = 0);
ClassifierSpec ShallowNnBaseline(std::uint64_t seed = 0);

// Cartesian product of hyperparameter values on top of `base`.
struct GbdtLattice {
  std::vector<int> max_depth{3, 4, 6};
  std::vector<double> learning_rate{0.03, 0.1};
  std::vector<int> n_trees{200, 500};
  std::vector<double> reg_lambda{1.0, 5.0};
};
struct LogisticLattice {
  std::vector<double> C{0.01, 0.1, 1.0, 10.0};
  std::vector<Penalty> penalty{Penalty::kL1, Penalty::kL2};
};
struct ShallowNnLattice {
  std::vector<int> hidden{16, 32};
  std::vector<double> dropout{0.0, 0.2};
};

std::vector<ClassifierSpec> ExpandGrid(const ClassifierSpec& base, const GbdtLattice& lattice);
std::vector<ClassifierSpec> ExpandGrid(const ClassifierSpec& base, const LogisticLattice& lattice);
std::vector<ClassifierSpec> ExpandGrid(const ClassifierSpec& base, const ShallowNnLattice& lattice);

// Lexicographic size key used to break CV ties toward the smaller model:
// fewer trees, then lower depth, then stronger regularization.
std::vector<double> ComplexityKey(const ClassifierSpec& spec);

}  // namespace hkdrisk

#endif  // HKDRISK_MODELS_SPEC_H_
