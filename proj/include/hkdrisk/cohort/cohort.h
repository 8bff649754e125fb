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

#ifndef HKDRISK_COHORT_COHORT_H_
#define HKDRISK_COHORT_COHORT_H_

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "hkdrisk/cohort/schema.h"

namespace hkdrisk {

// Missing cells are stored as quiet NaN.
inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();
inline bool IsMissing(double v) { return std::isnan(v); }

// Row-major patient matrix with binary 30-day-mortality labels. Immutable
// after construction.
//
// `lineage` identifies the raw data a cohort was derived from: loading,
// generation and splitting produce a fresh lineage (the content hash), while
// value transforms (imputation, scaling, oversampling) carry the parent's
// lineage forward so fitted plans and models can be checked for a common
// training source.
class Cohort {
 public:
  Cohort() = default;
  Cohort(FeatureSchema schema, std::vector<double> values, std::vector<int> labels,
         std::vector<std::string> row_ids, std::string lineage = {});

  const FeatureSchema& schema() const { return schema_; }
  std::size_t rows() const { return labels_.size(); }
  std::size_t cols() const { return schema_.size(); }
  double value(std::size_t r, std::size_t c) const { return values_[r * cols() + c]; }
  std::span<const double> row(std::size_t r) const {
    return {values_.data() + r * cols(), cols()};
  }
  const std::vector<double>& values() const { return values_; }
  const std::vector<int>& labels() const { return labels_; }
  const std::vector<std::string>& row_ids() const { return row_ids_; }
  const std::string& lineage() const { return lineage_; }

  std::size_t CountLabel(int label) const;
  std::size_t CountMissing() const;
  // Values of one column, in row order.
  std::vector<double> Column(std::size_t c) const;

  // Rows in the order given; fresh lineage.
  Cohort SelectRows(const std::vector<std::size_t>& indices) const;
  // Same rows restricted to `names` (in that order); lineage preserved.
  Cohort SelectFeatures(const std::vector<std::string>& names) const;
  // Same rows and labels with replacement values; lineage preserved.
  Cohort WithValues(std::vector<double> values) const;

  // SHA-256 over schema, values (bit patterns), labels and ids.
  std::string ContentHash() const;

 private:
  FeatureSchema schema_;
  std::vector<double> values_;
  std::vector<int> labels_;
  std::vector<std::string> row_ids_;
  std::string lineage_;
};

// Builds a cohort from rows of values; each row must have schema.size() cells.
Cohort MakeCohort(FeatureSchema schema, const std::vector<std::vector<double>>& rows,
                  std::vector<int> labels);

}  // namespace hkdrisk

#endif  // HKDRISK_COHORT_COHORT_H_
