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

#include "hkdrisk/preprocess/imputer.h"

#include "hkdrisk/common/error.h"
#include "hkdrisk/common/stats.h"

namespace hkdrisk {

ImputationPlan FitImputer(const Cohort& train) {
  ImputationPlan plan;
  plan.schema = train.schema();
  plan.source_lineage = train.lineage();
  for (std::size_t c = 0; c < train.cols(); ++c) {
    std::vector<double> present;
    for (std::size_t r = 0; r < train.rows(); ++r) {
      const double v = train.value(r, c);
      if (!IsMissing(v)) present.push_back(v);
    }
    const auto& def = train.schema().feature(c);
    if (present.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "feature " + def.name + " is missing for every training row", def.name);
    }
    if (def.kind == FeatureKind::kBinary) {
      std::size_t ones = 0;
      for (double v : present) ones += (v >= 0.5);
      plan.fill.push_back(2 * ones > present.size() ? 1.0 : 0.0);
    } else {
      plan.fill.push_back(Median(std::move(present)));
    }
  }
  return plan;
}

void ImputeRow(const ImputationPlan& plan, std::span<double> row) {
  if (row.size() != plan.fill.size()) {
    throw Error(ErrorCode::kSchema, "row width does not match imputation plan");
  }
  for (std::size_t c = 0; c < row.size(); ++c) {
    if (IsMissing(row[c])) row[c] = plan.fill[c];
  }
}

Cohort ApplyImputer(const ImputationPlan& plan, const Cohort& cohort) {
  if (!(plan.schema == cohort.schema())) {
    throw Error(ErrorCode::kSchema, "imputation plan schema does not match cohort");
  }
  std::vector<double> values = cohort.values();
  const std::size_t d = cohort.cols();
  for (std::size_t r = 0; r < cohort.rows(); ++r) {
    ImputeRow(plan, std::span<double>(values.data() + r * d, d));
  }
  return cohort.WithValues(std::move(values));
}

Json ImputationPlan::ToJson() const {
  return Json{{"schema", schema.ToJson()},
              {"fill", EncodeDoubles(fill)},
              {"source_lineage", source_lineage}};
}

ImputationPlan ImputationPlan::FromJson(const Json& json) {
  ImputationPlan plan;
  plan.schema = FeatureSchema::FromJson(RequireMember(json, "schema"));
  plan.fill = DecodeDoubles(RequireMember(json, "fill"));
  plan.source_lineage = RequireMember(json, "source_lineage").get<std::string>();
  if (plan.fill.size() != plan.schema.size()) {
    throw Error(ErrorCode::kSchema, "imputation plan does not cover the schema");
  }
  return plan;
}

}  // namespace hkdrisk
