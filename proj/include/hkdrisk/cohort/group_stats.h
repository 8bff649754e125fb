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

#ifndef HKDRISK_COHORT_GROUP_STATS_H_
#define HKDRISK_COHORT_GROUP_STATS_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hkdrisk/cohort/cohort.h"

namespace hkdrisk {

inline constexpr char kSurvivorGroup[] = "survivor";
inline constexpr char kNonSurvivorGroup[] = "non_survivor";
inline constexpr char kTrainGroup[] = "train";
inline constexpr char kTestGroup[] = "test";

// For binary features `mean` is the event rate.
struct FeatureStat {
  double mean = 0.0;
  double sd = 0.0;
  std::size_t count = 0;
};

struct GroupSummary {
  std::string name;
  std::size_t size = 0;
  // Aligned with the schema; nullopt marks a statistic that is unavailable
  // (every value missing in the group).
  std::vector<std::optional<FeatureStat>> features;
};

class GroupStats {
 public:
  GroupStats() = default;
  GroupStats(FeatureSchema schema, std::vector<GroupSummary> groups);

  const FeatureSchema& schema() const { return schema_; }
  const std::vector<GroupSummary>& groups() const { return groups_; }
  const GroupSummary* Find(std::string_view name) const;
  // Throws kNotFound when the group is absent.
  const GroupSummary& Require(std::string_view name) const;

  Json ToJson() const;
  static GroupStats FromJson(const Json& json);

 private:
  FeatureSchema schema_;
  std::vector<GroupSummary> groups_;
};

enum class Grouping { kByLabel, kBySplit };

// Mean/sd (n - 1 denominator, 0 for one value) over non-missing cells.
GroupSummary SummarizeRows(const Cohort& cohort, const std::vector<std::size_t>& rows,
                           std::string name);
// "survivor" (label 0) and "non_survivor" (label 1).
GroupStats SummarizeByLabel(const Cohort& cohort);
// "train" and "test".
GroupStats SummarizeSplit(const Cohort& train, const Cohort& test);

// Published 18-feature group statistics for the hypertensive kidney disease
// ICU cohort, by 30-day outcome (1,191 survivors, 175 non-survivors) and by
// split (956 train, 410 test). Binary features report the event rate.
GroupStats PublishedOutcomeStats();
GroupStats PublishedSplitStats();

}  // namespace hkdrisk

#endif  // HKDRISK_COHORT_GROUP_STATS_H_
