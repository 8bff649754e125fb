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

#ifndef HKDRISK_COHORT_TRUNCATED_NORMAL_H_
#define HKDRISK_COHORT_TRUNCATED_NORMAL_H_

#include <limits>

#include "hkdrisk/common/random.h"

namespace hkdrisk {

// Normal(mu, sigma) restricted to [lo, hi]; either bound may be infinite.
struct TruncatedNormal {
  double mu = 0.0;
  double sigma = 1.0;
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  double Mean() const;
  double Sd() const;
  // Probability mass of the untruncated normal inside [lo, hi].
  double Mass() const;
  // Density of the truncated distribution; 0 outside the bounds.
  double LogDensity(double x) const;

  // Rejection sampling from the parent normal with a cap of `max_attempts`;
  // falls back to clamping a final draw into the bounds. sigma == 0 yields mu
  // clamped into the bounds.
  double Sample(Rng& rng, int max_attempts = 1000) const;
};

// Parent parameters whose truncation to [lo, hi] reproduces `target_mean`
// exactly and `target_sd` as closely as the family allows. The parent sigma
// is searched in [0.1, 3] x target_sd and the parent mean is kept within the
// region where at least 2% of the parent mass survives truncation, so
// rejection sampling stays cheap.
TruncatedNormal MatchTruncatedMoments(double target_mean, double target_sd, double lo,
                                      double hi);

}  // namespace hkdrisk

#endif  // HKDRISK_COHORT_TRUNCATED_NORMAL_H_
