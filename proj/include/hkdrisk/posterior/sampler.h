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

#ifndef HKDRISK_POSTERIOR_SAMPLER_H_
#define HKDRISK_POSTERIOR_SAMPLER_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hkdrisk/common/json_util.h"
#include "hkdrisk/models/bundle.h"
#include "hkdrisk/posterior/prior.h"

namespace hkdrisk {

// Maps a natural-unit feature vector (aligned with the prior) to a risk.
using RiskFn = std::function<double(std::span<const double>)>;

struct CoordinateDiagnostic {
  std::string feature;
  double gelman_rubin = 1.0;
};

struct RiskPosterior {
  std::vector<double> samples;
  std::string method;  // "mc" or "dream"
  std::uint64_t seed = 0;
  int chains = 1;
  int iterations = 0;
  int burn_in = 0;
  double acceptance_rate = 1.0;  // post-burn-in, pooled over chains
  double effective_sample_size = 0.0;
  std::vector<CoordinateDiagnostic> diagnostics;  // per non-point coordinate
  double risk_gelman_rubin = 1.0;

  double max_gelman_rubin() const;
  Json DiagnosticsJson() const;
};

inline constexpr int kMinPosteriorDraws = 100;

// Independent prior draws pushed through `risk`. Draw i comes from stream
// DeriveSeed(seed, i / 1024), so results do not depend on thread count.
RiskPosterior SamplePosteriorMc(const RiskFn& risk, const PriorSpec& prior, int draws, std::uint64_t seed);
RiskPosterior SamplePosteriorMc(const ModelBundle& bundle, const PriorSpec& prior, int draws,
                                std::uint64_t seed);

struct DreamOptions {
  int chains = 5;
  int iterations = 20000;  // per chain, burn-in included
  int burn_in = 5000;
  std::uint64_t seed = 0;
  // Every `gamma_one_every`-th generation uses gamma = 1 to allow jumps
  // between modes.
  int gamma_one_every = 5;
  double jitter = 1e-3;  // Gaussian jitter sd as a fraction of prior sigma
  // Difference pairs come from an archive of past states. It starts with
  // `archive_init` prior draws (0 means 10 per moving coordinate, at least
  // 10 per chain) and grows by the current states every `archive_every`
  // generations.
  int archive_init = 0;
  int archive_every = 10;
};

// Differential-evolution Metropolis over the prior density. Within a
// generation chains update independently against the archive as it stood at
// the generation start: continuous coordinates chosen by crossover (CR drawn
// from {1/3, 2/3, 1}) move by gamma (z_a - z_b) + jitter with
// gamma = 2.38 / sqrt(2 d') over the d' chosen continuous coordinates;
// chosen binary coordinates flip. Point priors stay fixed. Post-burn-in
// states are scored with `risk` and pooled.
RiskPosterior SamplePosteriorDream(const RiskFn& risk, const PriorSpec& prior, const DreamOptions& options);
RiskPosterior SamplePosteriorDream(const ModelBundle& bundle, const PriorSpec& prior,
                                   const DreamOptions& options);

// Potential scale reduction over equal-length chains; 1 for constant input.
double GelmanRubin(const std::vector<std::vector<double>>& chains);
// Multi-chain ESS with Geyer's initial positive sequence truncation.
double EffectiveSampleSize(const std::vector<std::vector<double>>& chains);

}  // namespace hkdrisk

#endif  // HKDRISK_POSTERIOR_SAMPLER_H_
