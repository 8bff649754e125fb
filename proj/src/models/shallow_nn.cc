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

#include "hkdrisk/models/shallow_nn.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "hkdrisk/common/error.h"
#include "hkdrisk/common/random.h"

namespace hkdrisk {
namespace {

double Bce(double logit, int y) {
  // max(m, 0) - m y + log(1 + exp(-|m|))
  return std::max(logit, 0.0) - logit * y + std::log1p(std::exp(-std::abs(logit)));
}

// Accumulates the summed loss and gradient over `rows`; `mask` (hidden-sized
// per row, or empty) holds inverted-dropout multipliers.
double Accumulate(const NnWeights& w, const Dataset& data, std::span<const std::size_t> rows,
                  const std::vector<double>& mask, std::vector<double>& grad) {
  const std::size_t d = w.inputs, h = w.hidden;
  std::vector<double> pre(h), act(h);
  double loss = 0.0;
  const std::size_t ob1 = h * d, ow2 = ob1 + h, ob2 = ow2 + h;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto x = data.row(rows[i]);
    double logit = w.b2;
    for (std::size_t k = 0; k < h; ++k) {
      double z = w.b1[k];
      const double* wk = &w.w1[k * d];
      for (std::size_t j = 0; j < d; ++j) z += wk[j] * x[j];
      pre[k] = z;
      act[k] = z > 0.0 ? z : 0.0;
      if (!mask.empty()) act[k] *= mask[i * h + k];
      logit += w.w2[k] * act[k];
    }
    const int y = data.y[rows[i]];
    loss += Bce(logit, y);
    const double dlogit = Sigmoid(logit) - y;
    grad[ob2] += dlogit;
    for (std::size_t k = 0; k < h; ++k) {
      grad[ow2 + k] += dlogit * act[k];
      if (pre[k] <= 0.0) continue;
      double dz = dlogit * w.w2[k];
      if (!mask.empty()) dz *= mask[i * h + k];
      grad[ob1 + k] += dz;
      double* gk = &grad[k * d];
      for (std::size_t j = 0; j < d; ++j) gk[j] += dz * x[j];
    }
  }
  return loss;
}

void CheckWeights(const NnWeights& w) {
  if (w.w1.size() != w.inputs * w.hidden || w.b1.size() != w.hidden || w.w2.size() != w.hidden) {
    throw Error(ErrorCode::kSchema, "network weight shapes do not match their dimensions");
  }
  for (double v : w.Flatten()) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kNumeric, "non-finite network weight");
  }
}

}  // namespace

std::vector<double> NnWeights::Flatten() const {
  std::vector<double> flat;
  flat.reserve(size());
  flat.insert(flat.end(), w1.begin(), w1.end());
  flat.insert(flat.end(), b1.begin(), b1.end());
  flat.insert(flat.end(), w2.begin(), w2.end());
  flat.push_back(b2);
  return flat;
}

NnWeights NnWeights::Unflatten(std::size_t inputs, std::size_t hidden, std::span<const double> flat) {
  NnWeights w;
  w.inputs = inputs;
  w.hidden = hidden;
  if (flat.size() != inputs * hidden + 2 * hidden + 1) {
    throw Error(ErrorCode::kInvalidArgument, "flat parameter vector has the wrong length");
  }
  auto it = flat.begin();
  w.w1.assign(it, it + inputs * hidden);
  it += inputs * hidden;
  w.b1.assign(it, it + hidden);
  it += hidden;
  w.w2.assign(it, it + hidden);
  it += hidden;
  w.b2 = *it;
  return w;
}

double NnWeights::Logit(std::span<const double> x) const {
  double logit = b2;
  for (std::size_t k = 0; k < hidden; ++k) {
    double z = b1[k];
    const double* wk = &w1[k * inputs];
    for (std::size_t j = 0; j < inputs; ++j) z += wk[j] * x[j];
    if (z > 0.0) logit += w2[k] * z;
  }
  return logit;
}

double NnLoss(const NnWeights& weights, const Dataset& data, std::span<const std::size_t> rows) {
  double loss = 0.0;
  for (std::size_t r : rows) loss += Bce(weights.Logit(data.row(r)), data.y[r]);
  return loss / static_cast<double>(rows.size());
}

std::vector<double> NnLossGradient(const NnWeights& weights, const Dataset& data,
                                   std::span<const std::size_t> rows) {
  std::vector<double> grad(weights.size(), 0.0);
  Accumulate(weights, data, rows, {}, grad);
  for (double& g : grad) g /= static_cast<double>(rows.size());
  return grad;
}

NnModel::NnModel(NnWeights weights, ShallowNnParams params, std::uint64_t seed)
    : weights_(std::move(weights)), params_(params), seed_(seed) {
  CheckWeights(weights_);
}

Json NnModel::ToJson() const {
  return {{"family", "shallow_nn"},
          {"inputs", weights_.inputs},
          {"hidden", weights_.hidden},
          {"w1", EncodeDoubles(weights_.w1)},
          {"b1", EncodeDoubles(weights_.b1)},
          {"w2", EncodeDoubles(weights_.w2)},
          {"b2", EncodeDouble(weights_.b2)},
          {"params", ClassifierSpec{"", params_, seed_}.ToJson().at("params")},
          {"seed", seed_}};
}

NnModel NnModel::FromJson(const Json& json) {
  NnWeights w;
  w.inputs = RequireMember(json, "inputs").get<std::size_t>();
  w.hidden = RequireMember(json, "hidden").get<std::size_t>();
  w.w1 = DecodeDoubles(RequireMember(json, "w1"));
  w.b1 = DecodeDoubles(RequireMember(json, "b1"));
  w.w2 = DecodeDoubles(RequireMember(json, "w2"));
  w.b2 = DecodeDouble(RequireMember(json, "b2"));
  ShallowNnParams params;
  if (json.contains("params")) {
    params = std::get<ShallowNnParams>(
        ClassifierSpec::FromJson({{"family", "shallow_nn"}, {"params", json.at("params")}}).params);
  }
  return NnModel(std::move(w), params, json.value("seed", std::uint64_t{0}));
}

NnModel FitShallowNn(const ShallowNnParams& params, const Dataset& data, std::uint64_t seed) {
  ClassifierSpec{"shallow_nn", params, seed}.Validate();
  data.Validate();
  const std::size_t n = data.rows, d = data.cols, h = static_cast<std::size_t>(params.hidden);
  Rng rng(seed);

  NnWeights w;
  w.inputs = d;
  w.hidden = h;
  w.w1.resize(h * d);
  w.b1.assign(h, 0.0);
  w.w2.resize(h);
  const double s1 = std::sqrt(2.0 / static_cast<double>(std::max<std::size_t>(d, 1)));
  const double s2 = std::sqrt(2.0 / static_cast<double>(h));
  for (double& v : w.w1) v = s1 * StandardNormal(rng);
  for (double& v : w.w2) v = s2 * StandardNormal(rng);

  const std::size_t np = w.size();
  std::vector<double> m(np, 0.0), v(np, 0.0), grad(np), flat;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  const std::size_t batch = std::min<std::size_t>(static_cast<std::size_t>(params.batch_size), n);
  const double keep = 1.0 - params.dropout;
  std::vector<double> mask;
  std::vector<double> history;
  std::int64_t step = 0;

  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < n; start += batch) {
      const std::size_t end = std::min(n, start + batch);
      const std::span<const std::size_t> rows(order.data() + start, end - start);
      mask.clear();
      if (params.dropout > 0.0) {
        mask.resize(rows.size() * h);
        for (double& mk : mask) mk = Uniform01(rng) < keep ? 1.0 / keep : 0.0;
      }
      std::fill(grad.begin(), grad.end(), 0.0);
      const double loss = Accumulate(w, data, rows, mask, grad);
      if (!std::isfinite(loss)) {
        char buf[200];
        std::snprintf(buf, sizeof(buf),
                      "neural network training diverged at epoch %d (loss is not finite); "
                      "reduce learning_rate (currently %g)",
                      epoch + 1, params.learning_rate);
        throw Error(ErrorCode::kDivergence, buf, "learning_rate");
      }
      epoch_loss += loss;
      ++step;
      const double inv = 1.0 / static_cast<double>(rows.size());
      const double c1 = 1.0 - std::pow(params.beta1, static_cast<double>(step));
      const double c2 = 1.0 - std::pow(params.beta2, static_cast<double>(step));
      flat = w.Flatten();
      for (std::size_t i = 0; i < np; ++i) {
        const double g = grad[i] * inv;
        m[i] = params.beta1 * m[i] + (1.0 - params.beta1) * g;
        v[i] = params.beta2 * v[i] + (1.0 - params.beta2) * g * g;
        flat[i] -= params.learning_rate * (m[i] / c1) / (std::sqrt(v[i] / c2) + params.epsilon);
      }
      w = NnWeights::Unflatten(d, h, flat);
    }
    epoch_loss /= static_cast<double>(n);
    if (!std::isfinite(epoch_loss)) {
      throw Error(ErrorCode::kDivergence,
                  "neural network training diverged; reduce learning_rate", "learning_rate");
    }
    history.push_back(epoch_loss);
  }
  for (double p : w.Flatten()) {
    if (!std::isfinite(p)) {
      char buf[160];
      std::snprintf(buf, sizeof(buf),
                    "neural network weights became non-finite; reduce learning_rate (currently %g)",
                    params.learning_rate);
      throw Error(ErrorCode::kDivergence, buf, "learning_rate");
    }
  }
  NnModel model(std::move(w), params, seed);
  model.loss_history_ = std::move(history);
  return model;
}

}  // namespace hkdrisk
