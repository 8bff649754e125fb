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

#include "hkdrisk/cohort/truncated_normal.h"

#include <algorithm>
#include <cmath>

namespace hkdrisk {
namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double Phi(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }
double phi(double z) { return std::isinf(z) ? 0.0 : kInvSqrt2Pi * std::exp(-0.5 * z * z); }
// z * phi(z) with the infinite-bound limit 0.
double ZPhi(double z) { return std::isinf(z) ? 0.0 : z * phi(z); }

}  // namespace

double TruncatedNormal::Mass() const {
  if (sigma <= 0.0) return (mu >= lo && mu <= hi) ? 1.0 : 0.0;
  return Phi((hi - mu) / sigma) - Phi((lo - mu) / sigma);
}

double TruncatedNormal::Mean() const {
  if (sigma <= 0.0) return std::clamp(mu, lo, hi);
  const double a = (lo - mu) / sigma;
  const double b = (hi - mu) / sigma;
  const double z = Phi(b) - Phi(a);
  return mu + sigma * (phi(a) - phi(b)) / z;
}

double TruncatedNormal::Sd() const {
  if (sigma <= 0.0) return 0.0;
  const double a = (lo - mu) / sigma;
  const double b = (hi - mu) / sigma;
  const double z = Phi(b) - Phi(a);
  const double r = (phi(a) - phi(b)) / z;
  const double var = sigma * sigma * (1.0 + (ZPhi(a) - ZPhi(b)) / z - r * r);
  return std::sqrt(std::max(var, 0.0));
}

double TruncatedNormal::LogDensity(double x) const {
  if (x < lo || x > hi) return -std::numeric_limits<double>::infinity();
  if (sigma <= 0.0) return x == std::clamp(mu, lo, hi) ? 0.0 : -std::numeric_limits<double>::infinity();
  const double z = (x - mu) / sigma;
  return -0.5 * z * z - std::log(sigma) - std::log(Mass()) + std::log(kInvSqrt2Pi);
}

double TruncatedNormal::Sample(Rng& rng, int max_attempts) const {
  if (sigma <= 0.0) return std::clamp(mu, lo, hi);
  double x = mu;
  for (int i = 0; i < max_attempts; ++i) {
    x = mu + sigma * StandardNormal(rng);
    if (x >= lo && x <= hi) return x;
  }
  return std::clamp(x, lo, hi);
}

namespace {

constexpr double kMinMassZ = 2.0537;  // Phi(-2.0537) ~= 0.02

// Parent mean that reproduces `target` for a fixed parent sigma. The
// truncated mean is increasing in the parent mean, so bisection applies.
double SolveParentMean(double target, double sigma, double lo, double hi) {
  double left = std::isinf(lo) ? target - 10.0 * sigma : lo - kMinMassZ * sigma;
  double right = std::isinf(hi) ? target + 10.0 * sigma : hi + kMinMassZ * sigma;
  if (std::isinf(lo) && std::isinf(hi)) return target;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (left + right);
    const double m = TruncatedNormal{mid, sigma, lo, hi}.Mean();
    if (m < target) {
      left = mid;
    } else {
      right = mid;
    }
  }
  return 0.5 * (left + right);
}

}  // namespace

TruncatedNormal MatchTruncatedMoments(double target_mean, double target_sd, double lo,
                                      double hi) {
  if (target_sd <= 0.0) return {target_mean, 0.0, lo, hi};
  if (std::isinf(lo) && std::isinf(hi)) return {target_mean, target_sd, lo, hi};
  auto fit = [&](double sigma) {
    return TruncatedNormal{SolveParentMean(target_mean, sigma, lo, hi), sigma, lo, hi};
  };
  auto mean_matched = [&](double sigma) {
    const TruncatedNormal t = fit(sigma);
    return std::abs(t.Mean() - target_mean) <= 1e-9 * std::max(1.0, std::abs(target_mean));
  };
  double left = 0.1 * target_sd;
  double right = 3.0 * target_sd;
  if (!mean_matched(left)) return fit(left);
  // Wide parents cannot reach a mean close to a bound; shrink the search to
  // the widest parent that still matches the mean.
  if (!mean_matched(right)) {
    double ok = left;
    double bad = right;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (ok + bad);
      (mean_matched(mid) ? ok : bad) = mid;
    }
    right = ok;
  }
  if (fit(right).Sd() <= target_sd) return fit(right);
  if (fit(left).Sd() >= target_sd) return fit(left);
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (left + right);
    if (fit(mid).Sd() < target_sd) {
      left = mid;
    } else {
      right = mid;
    }
  }
  return fit(0.5 * (left + right));
}

}  // namespace hkdrisk
