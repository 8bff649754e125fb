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

#include "hkdrisk/models/classifier.h"

#include <cmath>
#include <string>

#include "hkdrisk/common/error.h"
#include "hkdrisk/models/gbdt.h"
#include "hkdrisk/models/logistic.h"
#include "hkdrisk/models/naive_bayes.h"
#include "hkdrisk/models/shallow_nn.h"

namespace hkdrisk {

double Sigmoid(double margin) {
  if (margin >= 0.0) return 1.0 / (1.0 + std::exp(-margin));
  const double e = std::exp(margin);
  return e / (1.0 + e);
}

double LogOdds(double p) { return std::log(p) - std::log1p(-p); }

void Classifier::CheckDimension(std::size_t got) const {
  if (got != num_features()) {
    throw Error(ErrorCode::kInvalidArgument,
                "feature vector has " + std::to_string(got) + " values, model expects " +
                    std::to_string(num_features()));
  }
}

double Classifier::PredictMargin(std::span<const double> x) const {
  CheckDimension(x.size());
  return Margin(x);
}

double Classifier::PredictProba(std::span<const double> x) const {
  return Sigmoid(PredictMargin(x));
}

std::vector<double> Classifier::PredictProba(const Dataset& data) const {
  CheckDimension(data.cols);
  std::vector<double> out(data.rows);
  for (std::size_t r = 0; r < data.rows; ++r) out[r] = Sigmoid(Margin(data.row(r)));
  return out;
}

ClassifierPtr TrainClassifier(const ClassifierSpec& spec, const Dataset& data) {
  spec.Validate();
  data.Validate();
  const std::size_t pos = data.positives();
  if (pos == 0 || pos == data.rows) {
    throw Error(ErrorCode::kInvalidArgument, "training data must contain both classes", "label");
  }
  if (const auto* p = std::get_if<GbdtParams>(&spec.params)) {
    return std::make_shared<GbdtModel>(FitGbdt(*p, data, spec.seed));
  }
  if (const auto* p = std::get_if<LogisticParams>(&spec.params)) {
    return std::make_shared<LinearModel>(FitLogistic(*p, data));
  }
  if (const auto* p = std::get_if<NaiveBayesParams>(&spec.params)) {
    return std::make_shared<NbModel>(FitNaiveBayes(*p, data));
  }
  return std::make_shared<NnModel>(FitShallowNn(std::get<ShallowNnParams>(spec.params), data, spec.seed));
}

ClassifierPtr ClassifierFromJson(const Json& json) {
  switch (ParseModelFamily(RequireMember(json, "family").get<std::string>())) {
    case ModelFamily::kGbdt: return std::make_shared<GbdtModel>(GbdtModel::FromJson(json));
    case ModelFamily::kLogistic: return std::make_shared<LinearModel>(LinearModel::FromJson(json));
    case ModelFamily::kNaiveBayes: return std::make_shared<NbModel>(NbModel::FromJson(json));
    case ModelFamily::kShallowNn: return std::make_shared<NnModel>(NnModel::FromJson(json));
  }
  throw Error(ErrorCode::kSchema, "unknown model family", "family");
}

}  // namespace hkdrisk
