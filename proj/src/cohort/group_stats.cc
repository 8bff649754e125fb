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

#include "hkdrisk/cohort/group_stats.h"

#include <array>
#include <cmath>

#include "hkdrisk/common/error.h"
#include "hkdrisk/common/stats.h"

namespace hkdrisk {

GroupStats::GroupStats(FeatureSchema schema, std::vector<GroupSummary> groups)
    : schema_(std::move(schema)), groups_(std::move(groups)) {
  for (const auto& g : groups_) {
    if (g.size < 1) throw Error(ErrorCode::kInvalidArgument, "group " + g.name + " is empty");
    if (g.features.size() != schema_.size()) {
      throw Error(ErrorCode::kCalibration, "group " + g.name + " does not cover the schema");
    }
    for (std::size_t j = 0; j < g.features.size(); ++j) {
      const auto& s = g.features[j];
      if (!s) continue;
      if (!(s->sd >= 0.0) || !std::isfinite(s->mean)) {
        throw Error(ErrorCode::kCalibration, "invalid statistic", schema_.feature(j).name);
      }
      if (schema_.feature(j).kind == FeatureKind::kBinary && !(s->mean >= 0 && s->mean <= 1)) {
        throw Error(ErrorCode::kCalibration, "binary rate outside [0, 1]",
                    schema_.feature(j).name);
      }
    }
  }
}

const GroupSummary* GroupStats::Find(std::string_view name) const {
  for (const auto& g : groups_) {
    if (g.name == name) return &g;
  }
  return nullptr;
}

const GroupSummary& GroupStats::Require(std::string_view name) const {
  const auto* g = Find(name);
  if (!g) throw Error(ErrorCode::kNotFound, "no group \"" + std::string(name) + "\"");
  return *g;
}

Json GroupStats::ToJson() const {
  Json groups = Json::array();
  for (const auto& g : groups_) {
    Json features = Json::object();
    for (std::size_t j = 0; j < g.features.size(); ++j) {
      const auto& s = g.features[j];
      features[schema_.feature(j).name] =
          s ? Json{{"mean", EncodeDouble(s->mean)},
                   {"sd", EncodeDouble(s->sd)},
                   {"count", s->count}}
            : Json(nullptr);
    }
    groups.push_back({{"name", g.name}, {"size", g.size}, {"features", features}});
  }
  return Json{{"schema", schema_.ToJson()}, {"groups", groups}};
}

GroupStats GroupStats::FromJson(const Json& json) {
  FeatureSchema schema = FeatureSchema::FromJson(RequireMember(json, "schema"));
  std::vector<GroupSummary> groups;
  for (const auto& g : RequireMember(json, "groups")) {
    GroupSummary out;
    out.name = RequireMember(g, "name").get<std::string>();
    out.size = RequireMember(g, "size").get<std::size_t>();
    const auto& features = RequireMember(g, "features");
    for (const auto& def : schema.features()) {
      if (!features.contains(def.name)) {
        throw Error(ErrorCode::kCalibration,
                    "group " + out.name + " lacks a statistic for " + def.name, def.name);
      }
      const auto& s = features.at(def.name);
      if (s.is_null()) {
        out.features.push_back(std::nullopt);
      } else {
        out.features.push_back(FeatureStat{DecodeDouble(RequireMember(s, "mean")),
                                           DecodeDouble(RequireMember(s, "sd")),
                                           s.value("count", std::size_t{0})});
      }
    }
    groups.push_back(std::move(out));
  }
  return GroupStats(std::move(schema), std::move(groups));
}

GroupSummary SummarizeRows(const Cohort& cohort, const std::vector<std::size_t>& rows,
                           std::string name) {
  if (rows.empty()) throw Error(ErrorCode::kInvalidArgument, "group " + name + " is empty");
  GroupSummary out;
  out.name = std::move(name);
  out.size = rows.size();
  for (std::size_t c = 0; c < cohort.cols(); ++c) {
    std::vector<double> present;
    for (std::size_t r : rows) {
      const double v = cohort.value(r, c);
      if (!IsMissing(v)) present.push_back(v);
    }
    if (present.empty()) {
      out.features.push_back(std::nullopt);
    } else {
      out.features.push_back(FeatureStat{Mean(present), SampleSd(present), present.size()});
    }
  }
  return out;
}

GroupStats SummarizeByLabel(const Cohort& cohort) {
  std::array<std::vector<std::size_t>, 2> rows;
  for (std::size_t r = 0; r < cohort.rows(); ++r) rows[cohort.labels()[r]].push_back(r);
  return GroupStats(cohort.schema(), {SummarizeRows(cohort, rows[0], kSurvivorGroup),
                                      SummarizeRows(cohort, rows[1], kNonSurvivorGroup)});
}

GroupStats SummarizeSplit(const Cohort& train, const Cohort& test) {
  if (!(train.schema() == test.schema())) {
    throw Error(ErrorCode::kSchema, "train and test schemas differ");
  }
  std::vector<std::size_t> train_rows(train.rows());
  std::vector<std::size_t> test_rows(test.rows());
  for (std::size_t i = 0; i < train_rows.size(); ++i) train_rows[i] = i;
  for (std::size_t i = 0; i < test_rows.size(); ++i) test_rows[i] = i;
  return GroupStats(train.schema(), {SummarizeRows(train, train_rows, kTrainGroup),
                                     SummarizeRows(test, test_rows, kTestGroup)});
}

namespace {

struct PublishedRow {
  double mean_a, sd_a, mean_b, sd_b;
};

GroupStats FromPublished(const std::array<PublishedRow, 18>& table, const char* name_a,
                         std::size_t size_a, const char* name_b, std::size_t size_b) {
  FeatureSchema schema = DefaultHkdSchema();
  GroupSummary a{name_a, size_a, {}};
  GroupSummary b{name_b, size_b, {}};
  for (const auto& row : table) {
    a.features.push_back(FeatureStat{row.mean_a, row.sd_a, size_a});
    b.features.push_back(FeatureStat{row.mean_b, row.sd_b, size_b});
  }
  return GroupStats(std::move(schema), {std::move(a), std::move(b)});
}

}  // namespace

GroupStats PublishedOutcomeStats() {
  // Schema order; survivor then non-survivor, mean (sd).
  static constexpr std::array<PublishedRow, 18> kTable = {{
      {-0.87, 1.13, -2.03, 1.80},     // Richmond-RAS Scale
      {1.96, 0.88, 2.84, 2.17},       // Lactate
      {38.28, 16.34, 44.46, 21.48},   // PTT
      {5.26, 1.06, 4.25, 1.69},       // GCS - Motor Response
      {14.90, 3.86, 17.10, 4.98},     // Anion gap
      {4.10, 1.33, 4.76, 1.78},       // Phosphorous
      {132.62, 67.58, 108.46, 52.13}, // pO2
      {18.74, 3.48, 20.41, 3.94},     // Respiratory Rate
      {21.86, 3.29, 20.24, 3.61},     // Bicarbonate
      {49.36, 18.07, 63.19, 22.82},   // APSIII
      {124.29, 19.28, 116.29, 15.80}, // Non-Invasive BP Systolic
      {4.02, 6.91, 4.54, 5.76},       // ED duration
      {51.20, 5.34, 49.11, 4.26},     // HR Alarm - Low
      {0.33, 0.47, 0.70, 0.46},       // Norepinephrine
      {0.50, 0.50, 0.24, 0.43},       // Oxycodone (IR)
      {0.14, 0.35, 0.41, 0.49},       // Severe Sepsis with Shock
      {0.04, 0.20, 0.11, 0.32},       // Cerebral Edema
      {0.32, 0.47, 0.48, 0.50},       // Multi Lumen
  }};
  return FromPublished(kTable, kSurvivorGroup, 1191, kNonSurvivorGroup, 175);
}

GroupStats PublishedSplitStats() {
  static constexpr std::array<PublishedRow, 18> kTable = {{
      {-1.02, 1.29, -0.98, 1.27},
      {2.08, 1.16, 2.03, 1.06},
      {39.07, 17.19, 38.13, 16.25},
      {5.13, 1.21, 5.17, 1.16},
      {15.18, 4.08, 14.95, 4.08},
      {4.19, 1.41, 4.08, 1.29},
      {129.54, 66.28, 132.18, 64.12},
      {18.95, 3.59, 18.97, 3.24},
      {21.66, 3.38, 21.90, 3.65},
      {51.12, 19.29, 50.50, 18.02},
      {123.27, 19.05, 122.92, 18.83},
      {4.09, 6.77, 4.73, 5.60},
      {50.93, 5.26, 50.61, 4.73},
      {0.38, 0.49, 0.37, 0.48},
      {0.46, 0.50, 0.46, 0.50},
      {0.17, 0.38, 0.16, 0.36},
      {0.05, 0.22, 0.05, 0.22},
      {0.34, 0.47, 0.34, 0.48},
  }};
  return FromPublished(kTable, kTrainGroup, 956, kTestGroup, 410);
}

}  // namespace hkdrisk
