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

#ifndef HKDRISK_POSTERIOR_SUMMARY_H_
#define HKDRISK_POSTERIOR_SUMMARY_H_

#include <cstddef>
#include <string>
#include <vector>

#include "hkdrisk/common/json_util.h"
#include "hkdrisk/posterior/sampler.h"

namespace hkdrisk {

inline constexpr int kPosteriorHistogramBins = 30;

struct Exceedance {
  double cutoff = 0.0;
  double probability = 0.0;  // P(risk > cutoff)
};

struct PosteriorSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double sd = 0.0;
  double ci_lo = 0.0;  // 2.5% quantile
  double ci_hi = 0.0;  // 97.5% quantile
  std::vector<double> edges;  // kPosteriorHistogramBins + 1 edges over [0, 1]
  std::vector<std::size_t> counts;
  std::vector<Exceedance> exceedances;

  Json ToJson() const;
  std::string HistogramCsv() const;
};

const std::vector<double>& DefaultRiskCutoffs();

PosteriorSummary SummarizePosterior(const std::vector<double>& samples,
                                    const std::vector<double>& cutoffs = DefaultRiskCutoffs());
PosteriorSummary SummarizePosterior(const RiskPosterior& posterior,
                                    const std::vector<double>& cutoffs = DefaultRiskCutoffs());

}  // namespace hkdrisk

#endif  // HKDRISK_POSTERIOR_SUMMARY_H_
