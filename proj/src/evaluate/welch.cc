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

#include "hkdrisk/evaluate/welch.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "hkdrisk/common/error.h"
#include "hkdrisk/common/stats.h"

namespace hkdrisk {
namespace {

std::vector<double> Present(std::span<const double> xs) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) {
    if (!std::isnan(x)) out.push_back(x);
  }
  return out;
}

double BetaContinuedFraction(double a, double b, double x) {
  constexpr int kMaxIter = 500;
  constexpr double kEps = 1e-15;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw Error(ErrorCode::kNumeric, "incomplete beta continued fraction did not converge");
}

struct Moments {
  double mean;
  double var;
  std::size_t n;
};

Moments Describe(std::span<const double> xs, const char* which) {
  const std::vector<double> v = Present(xs);
  if (v.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, std::string("t test sample ") + which +
                                                 " needs at least 2 values");
  }
  const double sd = SampleSd(v);
  return {Mean(v), sd * sd, v.size()};
}

TTestResult Finish(const Moments& a, const Moments& b, double t, double df) {
  TTestResult r;
  r.mean_a = a.mean;
  r.mean_b = b.mean;
  r.sd_a = std::sqrt(a.var);
  r.sd_b = std::sqrt(b.var);
  r.n_a = a.n;
  r.n_b = b.n;
  r.t = t;
  r.df = df;
  r.p = StudentTTwoSidedP(t, df);
  return r;
}

TTestResult Degenerate(const Moments& a, const Moments& b) {
  const double df = static_cast<double>(a.n + b.n - 2);
  TTestResult r = Finish(a, b, 0.0, df);
  r.degenerate = true;
  if (a.mean != b.mean) {
    r.t = a.mean > b.mean ? std::numeric_limits<double>::infinity()
                          : -std::numeric_limits<double>::infinity();
    r.p = 0.0;
  }
  return r;
}

}  // namespace

double RegularizedIncompleteBeta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) throw Error(ErrorCode::kInvalidArgument, "beta parameters must be positive");
  if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "x must lie in [0, 1]");
  if (x == 0.0 || x == 1.0) return x;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  // The continued fraction converges quickly for x < (a + 1) / (a + b + 2);
  // use the symmetry relation on the other side.
  if (x < (a + 1.0) / (a + b + 2.0)) return front * BetaContinuedFraction(a, b, x) / a;
  return 1.0 - front * BetaContinuedFraction(b, a, 1.0 - x) / b;
}

double StudentTTwoSidedP(double t, double df) {
  if (std::isnan(t) || !(df > 0.0)) throw Error(ErrorCode::kNumeric, "invalid t statistic or df");
  if (std::isinf(t)) return 0.0;
  if (t == 0.0) return 1.0;
  const double x = df / (df + t * t);
  return std::min(1.0, RegularizedIncompleteBeta(df / 2.0, 0.5, x));
}

TTestResult WelchTTest(std::span<const double> a, std::span<const double> b) {
  const Moments ma = Describe(a, "a");
  const Moments mb = Describe(b, "b");
  const double va = ma.var / static_cast<double>(ma.n);
  const double vb = mb.var / static_cast<double>(mb.n);
  if (va + vb == 0.0) return Degenerate(ma, mb);
  const double t = (ma.mean - mb.mean) / std::sqrt(va + vb);
  const double df = (va + vb) * (va + vb) /
                    (va * va / static_cast<double>(ma.n - 1) + vb * vb / static_cast<double>(mb.n - 1));
  return Finish(ma, mb, t, df);
}

TTestResult PooledTTest(std::span<const double> a, std::span<const double> b) {
  const Moments ma = Describe(a, "a");
  const Moments mb = Describe(b, "b");
  const double na = static_cast<double>(ma.n);
  const double nb = static_cast<double>(mb.n);
  const double df = na + nb - 2.0;
  const double pooled = ((na - 1.0) * ma.var + (nb - 1.0) * mb.var) / df;
  if (pooled == 0.0) return Degenerate(ma, mb);
  const double t = (ma.mean - mb.mean) / std::sqrt(pooled * (1.0 / na + 1.0 / nb));
  return Finish(ma, mb, t, df);
}

}  // namespace hkdrisk
