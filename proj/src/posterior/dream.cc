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
#include <cmath>
#include <limits>
#include <utility>

#include "hkdrisk/common/error.h"
#include "hkdrisk/common/log.h"
#include "hkdrisk/common/parallel.h"
#include "hkdrisk/common/random.h"
#include "hkdrisk/posterior/sampler.h"

namespace hkdrisk {
namespace {

double ChainMean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Within-chain variance W and pooled variance estimate V.
void Variances(const std::vector<std::vector<double>>& chains, double& W, double& V) {
  const double n = static_cast<double>(chains[0].size());
  const double M = static_cast<double>(chains.size());
  std::vector<double> means;
  W = 0.0;
  for (const auto& c : chains) {
    const double m = ChainMean(c);
    means.push_back(m);
    double ss = 0.0;
    for (double x : c) ss += (x - m) * (x - m);
    W += ss / (n - 1.0);
  }
  W /= M;
  const double grand = ChainMean(means);
  double B = 0.0;
  for (double m : means) B += (m - grand) * (m - grand);
  B = n * B / (M - 1.0);
  V = (n - 1.0) / n * W + B / n;
}

}  // namespace

double GelmanRubin(const std::vector<std::vector<double>>& chains) {
  if (chains.size() < 2 || chains[0].size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "Gelman-Rubin needs at least two chains of length two");
  }
  double W, V;
  Variances(chains, W, V);
  if (W <= 0.0) return V <= 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  return std::sqrt(V / W);
}

double EffectiveSampleSize(const std::vector<std::vector<double>>& chains) {
  const std::size_t M = chains.size(), n = chains[0].size();
  const double total = static_cast<double>(M * n);
  if (M < 2 || n < 4) return total;
  double W, V;
  Variances(chains, W, V);
  if (V <= 0.0) return total;
  std::vector<double> means;
  for (const auto& c : chains) means.push_back(ChainMean(c));
  auto rho = [&](std::size_t t) {
    double acov = 0.0;
    for (std::size_t c = 0; c < M; ++c) {
      double s = 0.0;
      for (std::size_t i = 0; i + t < n; ++i) s += (chains[c][i] - means[c]) * (chains[c][i + t] - means[c]);
      acov += s / static_cast<double>(n);
    }
    acov /= static_cast<double>(M);
    return 1.0 - (W - acov) / V;
  };
  double tau = -1.0;
  for (std::size_t k = 0; 2 * k + 1 < n; ++k) {
    const double pair = rho(2 * k) + rho(2 * k + 1);
    if (pair <= 0.0) break;
    tau += 2.0 * pair;
  }
  return total / std::max(tau, 1.0 / std::log10(total));
}

RiskPosterior SamplePosteriorDream(const RiskFn& risk, const PriorSpec& prior, const DreamOptions& options) {
  prior.Validate();
  if (options.chains < 3) {
    throw Error(ErrorCode::kInvalidArgument, "DREAM needs at least 3 chains for differential proposals", "chains");
  }
  if (options.burn_in < 0 || options.iterations <= options.burn_in) {
    throw Error(ErrorCode::kInvalidArgument, "DREAM needs iterations > burn_in >= 0", "iterations");
  }
  const auto C = static_cast<std::size_t>(options.chains);
  const auto kept = static_cast<std::size_t>(options.iterations - options.burn_in);
  if (C * kept < static_cast<std::size_t>(kMinPosteriorDraws)) {
    throw Error(ErrorCode::kInvalidArgument, "DREAM run keeps fewer than 100 post-burn-in draws", "iterations");
  }
  const std::size_t d = prior.features.size();
  std::vector<std::size_t> continuous, binary;
  for (std::size_t j = 0; j < d; ++j) {
    const auto& p = prior.features[j];
    if (p.kind == PriorKind::kTruncatedNormal) continuous.push_back(j);
    if (p.kind == PriorKind::kBernoulli && p.rate > 0.0 && p.rate < 1.0) binary.push_back(j);
  }
  std::vector<std::size_t> moving = continuous;
  moving.insert(moving.end(), binary.begin(), binary.end());

  std::vector<Rng> rngs;
  std::vector<std::vector<double>> state(C);
  std::vector<double> logp(C);
  for (std::size_t c = 0; c < C; ++c) {
    rngs.emplace_back(DeriveSeed(options.seed, c + 1));
    state[c] = prior.Sample(rngs[c]);
    logp[c] = prior.LogDensity(state[c]);
    if (std::isnan(logp[c]) || std::isinf(logp[c])) {
      throw Error(ErrorCode::kNumeric, "initial chain state has non-finite prior density");
    }
  }

  // Recorded post-burn-in trajectories.
  if (options.archive_every < 1) {
    throw Error(ErrorCode::kInvalidArgument, "archive_every must be positive", "archive_every");
  }
  if (options.archive_init < 0) {
    throw Error(ErrorCode::kInvalidArgument, "archive_init must be non-negative", "archive_init");
  }
  std::size_t n_init = static_cast<std::size_t>(options.archive_init);
  if (n_init == 0) n_init = std::max<std::size_t>(10 * moving.size(), 10 * C);
  n_init = std::max<std::size_t>(n_init, 2);
  std::vector<std::vector<double>> archive;
  archive.reserve(n_init + C * (static_cast<std::size_t>(options.iterations / options.archive_every) + 1));
  Rng archive_rng(DeriveSeed(options.seed, 0));
  for (std::size_t i = 0; i < n_init; ++i) archive.push_back(prior.Sample(archive_rng));

  std::vector<std::vector<std::vector<double>>> trace(moving.size(), std::vector<std::vector<double>>(C));
  // Post-burn-in states per chain (row-major) and whether each differs from
  // its predecessor; the model runs only on fresh states.
  std::vector<std::vector<double>> kept_states(C);
  std::vector<std::vector<char>> fresh(C);
  std::vector<std::size_t> accepted(C, 0);
  const double cr_values[3] = {1.0 / 3.0, 2.0 / 3.0, 1.0};
  std::vector<double> proposal(d);
  std::vector<char> chosen(moving.size());

  for (int gen = 0; gen < options.iterations; ++gen) {
    const std::size_t Z = archive.size();
    const bool record = gen >= options.burn_in;
    for (std::size_t c = 0; c < C; ++c) {
      Rng& rng = rngs[c];
      bool moved = false;
      if (!moving.empty()) {
        const double cr = cr_values[UniformIndex(rng, 3)];
        std::size_t n_chosen = 0, n_cont = 0;
        for (std::size_t m = 0; m < moving.size(); ++m) {
          chosen[m] = Uniform01(rng) < cr;
          n_chosen += chosen[m];
        }
        if (n_chosen == 0) chosen[UniformIndex(rng, moving.size())] = 1;
        for (std::size_t m = 0; m < continuous.size(); ++m) n_cont += chosen[m];
        const std::size_t a = UniformIndex(rng, Z);
        std::size_t b = UniformIndex(rng, Z - 1);
        if (b >= a) ++b;
        const bool unit_step = options.gamma_one_every > 0 && (gen + 1) % options.gamma_one_every == 0;
        const double gamma = unit_step ? 1.0 : 2.38 / std::sqrt(2.0 * static_cast<double>(std::max<std::size_t>(n_cont, 1)));
        proposal = state[c];
        for (std::size_t m = 0; m < moving.size(); ++m) {
          if (!chosen[m]) continue;
          const std::size_t j = moving[m];
          if (m < continuous.size()) {
            proposal[j] += gamma * (archive[a][j] - archive[b][j]) +
                           options.jitter * prior.features[j].Scale() * StandardNormal(rng);
          } else {
            proposal[j] = 1.0 - proposal[j];
          }
        }
        const double lp = prior.LogDensity(proposal);
        if (std::isnan(lp) || lp == std::numeric_limits<double>::infinity()) {
          throw Error(ErrorCode::kNumeric, "prior density is not finite at a proposed state");
        }
        const double u = Uniform01(rng);
        if (lp > -std::numeric_limits<double>::infinity() && std::log(u) < lp - logp[c]) {
          state[c] = proposal;
          logp[c] = lp;
          moved = true;
        }
      }
      if (!record) continue;
      if (moved) ++accepted[c];
      fresh[c].push_back(moved || fresh[c].empty());
      kept_states[c].insert(kept_states[c].end(), state[c].begin(), state[c].end());
      for (std::size_t m = 0; m < moving.size(); ++m) trace[m][c].push_back(state[c][moving[m]]);
    }
    if ((gen + 1) % options.archive_every == 0) archive.insert(archive.end(), state.begin(), state.end());
  }

  std::vector<std::pair<std::size_t, std::size_t>> jobs;
  for (std::size_t c = 0; c < C; ++c) {
    for (std::size_t i = 0; i < kept; ++i) {
      if (fresh[c][i]) jobs.emplace_back(c, i);
    }
  }
  std::vector<std::vector<double>> risk_trace(C, std::vector<double>(kept));
  ParallelFor(jobs.size(), [&](std::size_t k) {
    const auto [c, i] = jobs[k];
    risk_trace[c][i] = risk(std::span<const double>(kept_states[c].data() + i * d, d));
  });
  for (std::size_t c = 0; c < C; ++c) {
    for (std::size_t i = 1; i < kept; ++i) {
      if (!fresh[c][i]) risk_trace[c][i] = risk_trace[c][i - 1];
    }
  }

  RiskPosterior post;
  post.method = "dream";
  post.seed = options.seed;
  post.chains = options.chains;
  post.iterations = options.iterations;
  post.burn_in = options.burn_in;
  std::size_t total_accepted = 0;
  for (std::size_t a : accepted) total_accepted += a;
  post.acceptance_rate = moving.empty() ? 1.0 : static_cast<double>(total_accepted) / static_cast<double>(C * kept);
  for (const auto& chain : risk_trace) post.samples.insert(post.samples.end(), chain.begin(), chain.end());
  for (std::size_t m = 0; m < moving.size(); ++m) {
    post.diagnostics.push_back({prior.features[moving[m]].feature, GelmanRubin(trace[m])});
  }
  post.risk_gelman_rubin = GelmanRubin(risk_trace);
  post.effective_sample_size = EffectiveSampleSize(risk_trace);

  if (!moving.empty() && post.acceptance_rate < 0.01) {
    Json dump{{"acceptance_rate", EncodeDouble(post.acceptance_rate)}};
    Json per_chain = Json::array();
    for (std::size_t c = 0; c < C; ++c) {
      per_chain.push_back({{"accepted", accepted[c]}, {"state", EncodeDoubles(state[c])}});
    }
    dump["chains"] = per_chain;
    dump["diagnostics"] = post.DiagnosticsJson();
    LogWarning("DREAM acceptance rate below 1% after burn-in; diagnostics: " + dump.dump());
  }
  return post;
}

RiskPosterior SamplePosteriorDream(const ModelBundle& bundle, const PriorSpec& prior,
                                   const DreamOptions& options) {
  const PriorSpec aligned = prior.AlignTo(bundle.selected_features());
  return SamplePosteriorDream([&](std::span<const double> x) { return bundle.PredictProba(x); }, aligned,
                              options);
}

}  // namespace hkdrisk
