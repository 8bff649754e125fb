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

#include "hkdrisk/preprocess/scaler.h"

#include <algorithm>
#include <limits>

#include "hkdrisk/common/error.h"

namespace hkdrisk {

ScalingPlan FitMinMax(const Cohort& train) {
  ScalingPlan plan;
  plan.schema = train.schema();
  plan.source_lineage = train.lineage();
  for (std::size_t c = 0; c < train.cols(); ++c) {
    if (train.schema().feature(c).kind == FeatureKind::kBinary) {
      plan.x_min.push_back(0.0);
      plan.x_max.push_back(1.0);
      continue;
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < train.rows(); ++r) {
      const double v = train.value(r, c);
      if (IsMissing(v)) continue;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (lo > hi) lo = hi = 0.0;  // all missing; imputation runs first in practice
    plan.x_min.push_back(lo);
    plan.x_max.push_back(hi);
  }
  return plan;
}

double ScalingPlan::Scale(std::size_t feature, double x) const {
  if (IsMissing(x) || schema.feature(feature).kind == FeatureKind::kBinary) return x;
  const double span = x_max[feature] - x_min[feature];
  if (!(span > 0.0)) return 0.0;
  return std::clamp((x - x_min[feature]) / span, 0.0, 1.0);
}

void ScaleRow(const ScalingPlan& plan, std::span<double> row) {
  if (row.size() != plan.x_min.size()) {
    throw Error(ErrorCode::kSchema, "row width does not match scaling plan");
  }
  for (std::size_t c = 0; c < row.size(); ++c) row[c] = plan.Scale(c, row[c]);
}

Cohort ApplyMinMax(const ScalingPlan& plan, const Cohort& cohort) {
  if (!(plan.schema == cohort.schema())) {
    throw Error(ErrorCode::kSchema, "scaling plan schema does not match cohort");
  }
  std::vector<double> values = cohort.values();
  const std::size_t d = cohort.cols();
  for (std::size_t r = 0; r < cohort.rows(); ++r) {
    ScaleRow(plan, std::span<double>(values.data() + r * d, d));
  }
  return cohort.WithValues(std::move(values));
}

Json ScalingPlan::ToJson() const {
  return Json{{"schema", schema.ToJson()},
              {"x_min", EncodeDoubles(x_min)},
              {"x_max", EncodeDoubles(x_max)},
              {"source_lineage", source_lineage}};
}

ScalingPlan ScalingPlan::FromJson(const Json& json) {
  ScalingPlan plan;
  plan.schema = FeatureSchema::FromJson(RequireMember(json, "schema"));
  plan.x_min = DecodeDoubles(RequireMember(json, "x_min"));
  plan.x_max = DecodeDoubles(RequireMember(json, "x_max"));
  plan.source_lineage = RequireMember(json, "source_lineage").get<std::string>();
  if (plan.x_min.size() != plan.schema.size() || plan.x_max.size() != plan.schema.size()) {
    throw Error(ErrorCode::kSchema, "scaling plan does not cover the schema");
  }
  for (std::size_t i = 0; i < plan.x_min.size(); ++i) {
    if (plan.x_min[i] > plan.x_max[i]) {
      throw Error(ErrorCode::kSchema, "scaling plan has x_min > x_max",
                  plan.schema.feature(i).name);
    }
  }
  return plan;
}

}  // namespace hkdrisk
