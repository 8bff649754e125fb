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

#ifndef HKDRISK_SERVICE_HANDLERS_H_
#define HKDRISK_SERVICE_HANDLERS_H_

#include <string>
#include <vector>

#include "hkdrisk/common/error.h"
#include "hkdrisk/common/json_util.h"
#include "hkdrisk/models/bundle.h"

namespace hkdrisk {

// Request-size guards for the posterior endpoint.
inline constexpr int kMaxServiceDraws = 200000;
inline constexpr long kMaxServiceDreamSteps = 500000;  // chains * iterations

// HTTP status for an error category: 400 for bad input, 404 for missing
// resources, 422 for numerical failures, 500 otherwise.
int HttpStatusFor(ErrorCode code);
// {code, message, field?, bundle_hash?}
Json ErrorBody(const Error& error, const std::string& bundle_hash = {});

// Natural-unit values over the bundle's features parsed from
// {"features": {name: number | null, ...}}. Names must belong to the bundle
// schema; schema features the model does not use are reported as ignored.
struct PredictRequest {
  std::vector<double> values;        // aligned with selected_features(); NaN = missing
  std::vector<std::string> imputed;  // selected features absent or null
  std::vector<std::string> ignored;

  static PredictRequest FromJson(const Json& body, const ModelBundle& bundle);
};

struct PredictResponse {
  std::string bundle_hash;
  double risk = 0.0;
  double threshold = 0.0;
  int label = 0;
  std::vector<std::string> imputed;
  std::vector<std::string> ignored;

  Json ToJson() const;
};

PredictResponse HandlePredict(const Json& body, const ModelBundle& bundle);
// Log-odds attribution with base value; base + sum(phi) = logit(risk).
Json HandleExplain(const Json& body, const ModelBundle& bundle);
// Body: {"group": "survivor" | "non_survivor", "stats": "bundle" | "published"}
// or {"prior": PriorSpec} or {"features": {...}} for a point prior at the
// imputed row; plus "sampler" ("mc" default | "dream"), "draws", "seed",
// "chains", "iterations", "burn_in", "cutoffs".
Json HandlePosterior(const Json& body, const ModelBundle& bundle);
Json HandleSchema(const ModelBundle& bundle);
Json HandleModel(const ModelBundle& bundle);

}  // namespace hkdrisk

#endif  // HKDRISK_SERVICE_HANDLERS_H_
