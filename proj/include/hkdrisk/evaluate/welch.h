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

#ifndef HKDRISK_EVALUATE_WELCH_H_
#define HKDRISK_EVALUATE_WELCH_H_

#include <cstddef>
#include <span>

namespace hkdrisk {

// Smallest p value written to reports.
inline constexpr double kReportedPFloor = 1e-300;

struct TTestResult {
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;
  double mean_a = 0.0;
  double mean_b = 0.0;
  double sd_a = 0.0;
  double sd_b = 0.0;
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  // Both samples had zero variance; t and p are limiting conventions
  // (p = 1 for equal constants, t = +/-inf and p = 0 otherwise).
  bool degenerate = false;
};

// Unequal-variance two-sample t test, two-sided. Each sample needs n >= 2;
// NaN entries are ignored.
TTestResult WelchTTest(std::span<const double> a, std::span<const double> b);

// Two-sample pooled-variance t test, two-sided.
TTestResult PooledTTest(std::span<const double> a, std::span<const double> b);

// Regularized incomplete beta I_x(a, b) by Lentz continued fraction.
double RegularizedIncompleteBeta(double a, double b, double x);

// P(|T| >= |t|) for Student t with `df` degrees of freedom.
double StudentTTwoSidedP(double t, double df);

}  // namespace hkdrisk

#endif  // HKDRISK_EVALUATE_WELCH_H_
