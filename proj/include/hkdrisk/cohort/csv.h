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

#ifndef HKDRISK_COHORT_CSV_H_
#define HKDRISK_COHORT_CSV_H_

#include <filesystem>
#include <istream>
#include <string>

#include "hkdrisk/cohort/cohort.h"

namespace hkdrisk {

enum class RangePolicy { kReject, kClampWithWarning };

// Optional column carrying patient identifiers. When absent, rows are named
// "row<N>" with N the 1-based data line number.
inline constexpr char kRowIdColumn[] = "row_id";

struct CsvLoadOptions {
  RangePolicy range_policy = RangePolicy::kReject;
};

// Header must name every schema feature plus the label column, in any order.
// Empty cells and "NA" are recorded as missing; no imputation happens here.
Cohort ParseCohortCsv(std::istream& in, const FeatureSchema& schema,
                      const CsvLoadOptions& options = {}, const std::string& source = "<stream>");
Cohort LoadCohortCsv(const std::filesystem::path& path, const FeatureSchema& schema,
                     const CsvLoadOptions& options = {});

// Writes row_id, features in schema order, label. Values use shortest
// round-trip decimals; missing cells are written as "NA".
std::string FormatCohortCsv(const Cohort& cohort);
void WriteCohortCsv(const std::filesystem::path& path, const Cohort& cohort);

}  // namespace hkdrisk

#endif  // HKDRISK_COHORT_CSV_H_
