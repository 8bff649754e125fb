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

#ifndef HKDRISK_INTERPRET_SHAP_H_
#define HKDRISK_INTERPRET_SHAP_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hkdrisk/common/json_util.h"
#include "hkdrisk/models/classifier.h"
#include "hkdrisk/models/gbdt.h"

namespace hkdrisk {

enum class ShapSpace { kLogOdds, kProbability };
std::string_view ShapSpaceName(ShapSpace space);

// base + sum(phi) == output in `space`.
struct ShapAttribution {
  std::vector<std::string> features;  // may be empty
  std::vector<double> phi;
  double base = 0.0;
  double output = 0.0;
  ShapSpace space = ShapSpace::kLogOdds;

  double Reconstructed() const;
  Json ToJson() const;
};

// Path-dependent TreeSHAP over every tree of the ensemble, in log-odds space.
// Conditional expectations follow the node covers, so the base value is the
// cover-weighted mean margin (the training-row mean when covers come from
// training). Throws kInvalidArgument for non-tree models.
ShapAttribution TreeShap(const GbdtModel& model, std::span<const double> x);
ShapAttribution TreeShap(const Classifier& model, std::span<const double> x);
// Expected margin under the covers: base score + eta * sum of cover-weighted
// leaf means.
double TreeShapBase(const GbdtModel& model);

inline constexpr std::size_t kMaxBruteForceFeatures = 20;

// Literal Shapley sum over all 2^d coalitions with the interventional value
// function v(S) = mean over background rows b of f(x_S, b_rest). Works for
// any model; refuses d > kMaxBruteForceFeatures.
ShapAttribution ExactShapBruteForce(const Classifier& model, std::span<const double> x,
                                    const Dataset& background,
                                    ShapSpace space = ShapSpace::kLogOdds);

// Rescales log-odds attributions so they sum to the probability change. The
// split between features is proportional, not a Shapley solution of the
// probability game.
ShapAttribution ToProbabilitySpace(const ShapAttribution& log_odds);

}  // namespace hkdrisk

#endif  // HKDRISK_INTERPRET_SHAP_H_
