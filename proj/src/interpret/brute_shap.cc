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

#include <cmath>
#include <cstdint>
#include <string>

#include "hkdrisk/common/error.h"
#include "hkdrisk/common/parallel.h"
#include "hkdrisk/interpret/shap.h"

namespace hkdrisk {

std::string_view ShapSpaceName(ShapSpace space) {
  return space == ShapSpace::kLogOdds ? "log_odds" : "probability";
}

double ShapAttribution::Reconstructed() const {
  double s = base;
  for (double p : phi) s += p;
  return s;
}

Json ShapAttribution::ToJson() const {
  Json contributions = Json::array();
  for (std::size_t i = 0; i < phi.size(); ++i) {
    Json c{{"phi", EncodeDouble(phi[i])}};
    if (i < features.size()) c["feature"] = features[i];
    contributions.push_back(std::move(c));
  }
  return {{"space", ShapSpaceName(space)},
          {"base", EncodeDouble(base)},
          {"output", EncodeDouble(output)},
          {"contributions", std::move(contributions)}};
}

ShapAttribution ExactShapBruteForce(const Classifier& model, std::span<const double> x,
                                    const Dataset& background, ShapSpace space) {
  const std::size_t d = model.num_features();
  if (d > kMaxBruteForceFeatures) {
    throw Error(ErrorCode::kInvalidArgument,
                "brute-force Shapley enumerates 2^d coalitions and is limited to d <= " +
                    std::to_string(kMaxBruteForceFeatures) + " (model has " + std::to_string(d) + ")",
                "features");
  }
  if (x.size() != d || background.cols != d) {
    throw Error(ErrorCode::kInvalidArgument, "probe and background must match the model dimension");
  }
  if (background.rows == 0) throw Error(ErrorCode::kInvalidArgument, "background is empty", "background");

  auto eval = [&](std::span<const double> z) {
    return space == ShapSpace::kLogOdds ? model.Margin(z) : model.PredictProba(z);
  };
  const std::size_t masks = std::size_t{1} << d;
  std::vector<double> value(masks);
  const std::size_t chunk = 256;
  ParallelFor((masks + chunk - 1) / chunk, [&](std::size_t c) {
    std::vector<double> z(d);
    for (std::size_t m = c * chunk; m < std::min(masks, (c + 1) * chunk); ++m) {
      double sum = 0.0;
      for (std::size_t b = 0; b < background.rows; ++b) {
        const auto row = background.row(b);
        for (std::size_t j = 0; j < d; ++j) z[j] = (m >> j) & 1 ? x[j] : row[j];
        sum += eval(z);
      }
      value[m] = sum / static_cast<double>(background.rows);
    }
  });

  // weight[s] = s! (d - s - 1)! / d!
  std::vector<double> weight(d, 0.0);
  for (std::size_t s = 0; s < d; ++s) {
    weight[s] = std::exp(std::lgamma(static_cast<double>(s + 1)) +
                         std::lgamma(static_cast<double>(d - s)) - std::lgamma(static_cast<double>(d + 1)));
  }
  ShapAttribution out;
  out.space = space;
  out.phi.assign(d, 0.0);
  for (std::size_t m = 0; m < masks; ++m) {
    const auto size = static_cast<std::size_t>(__builtin_popcountll(m));
    for (std::size_t i = 0; i < d; ++i) {
      if ((m >> i) & 1) continue;
      out.phi[i] += weight[size] * (value[m | (std::size_t{1} << i)] - value[m]);
    }
  }
  out.base = value[0];
  out.output = eval(x);
  return out;
}

ShapAttribution ToProbabilitySpace(const ShapAttribution& log_odds) {
  if (log_odds.space != ShapSpace::kLogOdds) return log_odds;
  ShapAttribution out = log_odds;
  out.space = ShapSpace::kProbability;
  out.base = Sigmoid(log_odds.base);
  out.output = Sigmoid(log_odds.output);
  const double dm = log_odds.output - log_odds.base;
  const double dp = out.output - out.base;
  // As dm -> 0 the ratio tends to the sigmoid slope at the base.
  const double ratio = std::abs(dm) > 1e-12 ? dp / dm : out.base * (1.0 - out.base);
  for (double& p : out.phi) p *= ratio;
  return out;
}

}  // namespace hkdrisk
