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

#include "hkdrisk/posterior/summary.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hkdrisk/common/error.h"
#include "hkdrisk/common/stats.h"

namespace hkdrisk {

const std::vector<double>& DefaultRiskCutoffs() {
  static const std::vector<double> cutoffs{0.1, 0.25, 0.5, 0.75};
  return cutoffs;
}

PosteriorSummary SummarizePosterior(const std::vector<double>& samples, const std::vector<double>& cutoffs) {
  if (samples.size() < static_cast<std::size_t>(kMinPosteriorDraws)) {
    throw Error(ErrorCode::kInvalidArgument,
                "posterior summary needs at least " + std::to_string(kMinPosteriorDraws) + " samples", "samples");
  }
  for (double s : samples) {
    if (!std::isfinite(s) || s < 0.0 || s > 1.0) {
      throw Error(ErrorCode::kRange, "posterior sample outside [0, 1]", "samples");
    }
  }
  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());

  PosteriorSummary out;
  out.n = samples.size();
  // A degenerate posterior reports its value exactly instead of a rounded sum.
  const bool constant = sorted.front() == sorted.back();
  out.mean = constant ? sorted.front() : Mean(samples);
  out.sd = constant ? 0.0 : SampleSd(samples);
  out.ci_lo = QuantileSorted(sorted, 0.025);
  out.ci_hi = QuantileSorted(sorted, 0.975);
  out.edges.resize(kPosteriorHistogramBins + 1);
  for (int b = 0; b <= kPosteriorHistogramBins; ++b) out.edges[b] = static_cast<double>(b) / kPosteriorHistogramBins;
  out.counts.assign(kPosteriorHistogramBins, 0);
  for (double s : samples) {
    const int b = std::min(static_cast<int>(s * kPosteriorHistogramBins), kPosteriorHistogramBins - 1);
    ++out.counts[static_cast<std::size_t>(b)];
  }
  for (double c : cutoffs) {
    const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), c);
    out.exceedances.push_back({c, static_cast<double>(above) / static_cast<double>(out.n)});
  }
  return out;
}

PosteriorSummary SummarizePosterior(const RiskPosterior& posterior, const std::vector<double>& cutoffs) {
  return SummarizePosterior(posterior.samples, cutoffs);
}

Json PosteriorSummary::ToJson() const {
  Json ex = Json::array();
  for (const auto& e : exceedances) ex.push_back({{"cutoff", e.cutoff}, {"probability", e.probability}});
  return {{"n", n},
          {"mean", WireDouble(mean)},
          {"sd", WireDouble(sd)},
          {"ci95", {WireDouble(ci_lo), WireDouble(ci_hi)}},
          {"histogram", {{"edges", edges}, {"counts", counts}}},
          {"exceedance", ex}};
}

std::string PosteriorSummary::HistogramCsv() const {
  std::ostringstream os;
  os.precision(17);
  os << "bin_lo,bin_hi,count\n";
  for (std::size_t b = 0; b < counts.size(); ++b) os << edges[b] << ',' << edges[b + 1] << ',' << counts[b] << '\n';
  return os.str();
}

}  // namespace hkdrisk
