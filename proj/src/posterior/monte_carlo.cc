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

#include <algorithm>

#include "hkdrisk/common/error.h"
#include "hkdrisk/common/parallel.h"
#include "hkdrisk/posterior/sampler.h"

namespace hkdrisk {

double RiskPosterior::max_gelman_rubin() const {
  double m = risk_gelman_rubin;
  for (const auto& d : diagnostics) m = std::max(m, d.gelman_rubin);
  return m;
}

Json RiskPosterior::DiagnosticsJson() const {
  Json coords = Json::array();
  for (const auto& d : diagnostics) coords.push_back({{"feature", d.feature}, {"gelman_rubin", WireDouble(d.gelman_rubin)}});
  return {{"method", method},
          {"seed", seed},
          {"chains", chains},
          {"iterations", iterations},
          {"burn_in", burn_in},
          {"draws", samples.size()},
          {"acceptance_rate", WireDouble(acceptance_rate)},
          {"effective_sample_size", WireDouble(effective_sample_size)},
          {"risk_gelman_rubin", WireDouble(risk_gelman_rubin)},
          {"coordinates", coords}};
}

RiskPosterior SamplePosteriorMc(const RiskFn& risk, const PriorSpec& prior, int draws, std::uint64_t seed) {
  prior.Validate();
  if (draws < kMinPosteriorDraws) {
    throw Error(ErrorCode::kInvalidArgument,
                "posterior sampling needs at least " + std::to_string(kMinPosteriorDraws) + " draws", "draws");
  }
  RiskPosterior post;
  post.method = "mc";
  post.seed = seed;
  post.iterations = draws;
  post.samples.resize(static_cast<std::size_t>(draws));
  constexpr std::size_t kChunk = 1024;
  const std::size_t n = post.samples.size();
  ParallelFor((n + kChunk - 1) / kChunk, [&](std::size_t c) {
    Rng rng(DeriveSeed(seed, c));
    for (std::size_t i = c * kChunk; i < std::min(n, (c + 1) * kChunk); ++i) {
      const std::vector<double> x = prior.Sample(rng);
      post.samples[i] = risk(x);
    }
  });
  post.effective_sample_size = static_cast<double>(n);
  return post;
}

RiskPosterior SamplePosteriorMc(const ModelBundle& bundle, const PriorSpec& prior, int draws,
                                std::uint64_t seed) {
  const PriorSpec aligned = prior.AlignTo(bundle.selected_features());
  return SamplePosteriorMc([&](std::span<const double> x) { return bundle.PredictProba(x); }, aligned, draws,
                           seed);
}

}  // namespace hkdrisk
