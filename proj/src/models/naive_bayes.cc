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

#include "hkdrisk/models/naive_bayes.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hkdrisk/common/error.h"

namespace hkdrisk {
namespace {

double LogGaussian(double x, double mean, double var) {
  const double z = x - mean;
  return -0.5 * (std::log(2.0 * std::numbers::pi * var) + z * z / var);
}

double LogBernoulli(double x, double rate) {
  return x * std::log(rate) + (1.0 - x) * std::log1p(-rate);
}

}  // namespace

NbModel::NbModel(std::vector<FeatureKind> kinds, std::array<ClassParams, 2> classes, double var_floor)
    : kinds_(std::move(kinds)), classes_(std::move(classes)), var_floor_(var_floor) {
  const std::size_t d = kinds_.size();
  if (std::abs(classes_[0].prior + classes_[1].prior - 1.0) > 1e-12) {
    throw Error(ErrorCode::kSchema, "class priors must sum to 1", "prior");
  }
  for (const auto& c : classes_) {
    if (c.mean.size() != d || c.var.size() != d) throw Error(ErrorCode::kSchema, "naive Bayes shape mismatch");
    if (!(c.prior > 0.0 && c.prior < 1.0)) throw Error(ErrorCode::kSchema, "class prior outside (0, 1)", "prior");
    for (std::size_t j = 0; j < d; ++j) {
      if (kinds_[j] == FeatureKind::kBinary) {
        if (!(c.mean[j] > 0.0 && c.mean[j] < 1.0)) {
          throw Error(ErrorCode::kSchema, "Bernoulli rate outside (0, 1)", "mean");
        }
      } else if (!(c.var[j] > 0.0) || !std::isfinite(c.var[j]) || !std::isfinite(c.mean[j])) {
        throw Error(ErrorCode::kSchema, "Gaussian variance must be positive and finite", "var");
      }
    }
  }
}

double NbModel::Margin(std::span<const double> x) const {
  double m = std::log(classes_[1].prior) - std::log(classes_[0].prior);
  for (std::size_t j = 0; j < kinds_.size(); ++j) {
    if (kinds_[j] == FeatureKind::kBinary) {
      m += LogBernoulli(x[j], classes_[1].mean[j]) - LogBernoulli(x[j], classes_[0].mean[j]);
    } else {
      m += LogGaussian(x[j], classes_[1].mean[j], classes_[1].var[j]) -
           LogGaussian(x[j], classes_[0].mean[j], classes_[0].var[j]);
    }
  }
  return m;
}

NbModel NbModel::WithVarianceScale(double factor) const {
  auto classes = classes_;
  for (auto& c : classes) {
    for (std::size_t j = 0; j < kinds_.size(); ++j) {
      if (kinds_[j] == FeatureKind::kContinuous) c.var[j] *= factor;
    }
  }
  return NbModel(kinds_, classes, var_floor_ * factor);
}

Json NbModel::ToJson() const {
  Json kinds = Json::array();
  for (FeatureKind k : kinds_) kinds.push_back(FeatureKindName(k));
  Json classes = Json::array();
  for (const auto& c : classes_) {
    classes.push_back({{"prior", EncodeDouble(c.prior)},
                       {"mean", EncodeDoubles(c.mean)},
                       {"var", EncodeDoubles(c.var)}});
  }
  return {{"family", "naive_bayes"},
          {"kinds", kinds},
          {"classes", classes},
          {"var_floor", EncodeDouble(var_floor_)}};
}

NbModel NbModel::FromJson(const Json& json) {
  std::vector<FeatureKind> kinds;
  for (const auto& k : RequireMember(json, "kinds")) kinds.push_back(ParseFeatureKind(k.get<std::string>()));
  const Json& classes = RequireMember(json, "classes");
  if (!classes.is_array() || classes.size() != 2) throw Error(ErrorCode::kSchema, "expected two classes", "classes");
  std::array<ClassParams, 2> params;
  for (int c = 0; c < 2; ++c) {
    params[c].prior = DecodeDouble(RequireMember(classes[c], "prior"));
    params[c].mean = DecodeDoubles(RequireMember(classes[c], "mean"));
    params[c].var = DecodeDoubles(RequireMember(classes[c], "var"));
  }
  return NbModel(std::move(kinds), std::move(params), DecodeDouble(RequireMember(json, "var_floor")));
}

NbModel FitNaiveBayes(const NaiveBayesParams& params, const Dataset& data) {
  ClassifierSpec{"naive_bayes", params, 0}.Validate();
  data.Validate();
  const std::size_t n = data.rows, d = data.cols;
  std::array<std::size_t, 2> count{0, 0};
  for (int y : data.y) ++count[y];
  if (count[0] == 0 || count[1] == 0) {
    throw Error(ErrorCode::kInvalidArgument, "training data must contain both classes", "label");
  }
  std::array<NbModel::ClassParams, 2> classes;
  for (int c = 0; c < 2; ++c) {
    classes[c].prior = static_cast<double>(count[c]) / static_cast<double>(n);
    classes[c].mean.assign(d, 0.0);
    classes[c].var.assign(d, 0.0);
  }
  classes[0].prior = 1.0 - classes[1].prior;
  for (std::size_t r = 0; r < n; ++r) {
    auto& c = classes[data.y[r]];
    for (std::size_t j = 0; j < d; ++j) c.mean[j] += data.at(r, j);
  }
  for (int c = 0; c < 2; ++c) {
    for (double& m : classes[c].mean) m /= static_cast<double>(count[c]);
  }
  for (std::size_t r = 0; r < n; ++r) {
    auto& c = classes[data.y[r]];
    for (std::size_t j = 0; j < d; ++j) {
      const double z = data.at(r, j) - c.mean[j];
      c.var[j] += z * z;
    }
  }
  // Largest overall feature variance sets the smoothing scale.
  double max_var = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    if (data.kinds[j] != FeatureKind::kContinuous) continue;
    double mean = 0.0, ss = 0.0;
    for (std::size_t r = 0; r < n; ++r) mean += data.at(r, j);
    mean /= static_cast<double>(n);
    for (std::size_t r = 0; r < n; ++r) ss += (data.at(r, j) - mean) * (data.at(r, j) - mean);
    max_var = std::max(max_var, ss / static_cast<double>(n));
  }
  const double floor = std::max(params.var_smoothing * max_var, 1e-12);
  for (int c = 0; c < 2; ++c) {
    auto& cp = classes[c];
    for (std::size_t j = 0; j < d; ++j) {
      if (data.kinds[j] == FeatureKind::kBinary) {
        const double k = cp.mean[j] * static_cast<double>(count[c]);
        cp.mean[j] = (k + params.alpha) / (static_cast<double>(count[c]) + 2.0 * params.alpha);
        cp.var[j] = 0.0;
      } else {
        cp.var[j] = cp.var[j] / static_cast<double>(count[c]) + floor;
      }
    }
  }
  return NbModel(data.kinds, std::move(classes), floor);
}

}  // namespace hkdrisk
