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

#include "hkdrisk/cohort/cohort.h"

#include <cstring>
#include <unordered_set>

#include "hkdrisk/common/error.h"
#include "hkdrisk/common/hash.h"

namespace hkdrisk {

Cohort::Cohort(FeatureSchema schema, std::vector<double> values, std::vector<int> labels,
               std::vector<std::string> row_ids, std::string lineage)
    : schema_(std::move(schema)),
      values_(std::move(values)),
      labels_(std::move(labels)),
      row_ids_(std::move(row_ids)),
      lineage_(std::move(lineage)) {
  if (values_.size() != labels_.size() * schema_.size()) {
    throw Error(ErrorCode::kInvalidArgument, "value matrix does not match label count");
  }
  if (row_ids_.size() != labels_.size()) {
    throw Error(ErrorCode::kInvalidArgument, "row id count does not match label count");
  }
  for (int y : labels_) {
    if (y != 0 && y != 1) throw Error(ErrorCode::kInvalidArgument, "labels must be 0 or 1");
  }
  std::unordered_set<std::string> ids(row_ids_.begin(), row_ids_.end());
  if (ids.size() != row_ids_.size()) {
    throw Error(ErrorCode::kInvalidArgument, "row ids must be unique");
  }
  if (lineage_.empty()) lineage_ = ContentHash();
}

std::size_t Cohort::CountLabel(int label) const {
  std::size_t n = 0;
  for (int y : labels_) n += (y == label);
  return n;
}

std::size_t Cohort::CountMissing() const {
  std::size_t n = 0;
  for (double v : values_) n += IsMissing(v);
  return n;
}

std::vector<double> Cohort::Column(std::size_t c) const {
  std::vector<double> out(rows());
  for (std::size_t r = 0; r < rows(); ++r) out[r] = value(r, c);
  return out;
}

Cohort Cohort::SelectRows(const std::vector<std::size_t>& indices) const {
  std::vector<double> values;
  values.reserve(indices.size() * cols());
  std::vector<int> labels;
  std::vector<std::string> ids;
  for (std::size_t r : indices) {
    if (r >= rows()) throw Error(ErrorCode::kInvalidArgument, "row index out of range");
    auto src = row(r);
    values.insert(values.end(), src.begin(), src.end());
    labels.push_back(labels_[r]);
    ids.push_back(row_ids_[r]);
  }
  return Cohort(schema_, std::move(values), std::move(labels), std::move(ids));
}

Cohort Cohort::SelectFeatures(const std::vector<std::string>& names) const {
  std::vector<std::size_t> cols_idx;
  for (const auto& n : names) cols_idx.push_back(schema_.RequireIndex(n));
  std::vector<double> values;
  values.reserve(rows() * names.size());
  for (std::size_t r = 0; r < rows(); ++r) {
    for (std::size_t c : cols_idx) values.push_back(value(r, c));
  }
  return Cohort(schema_.Subset(names), std::move(values), labels_, row_ids_, lineage_);
}

Cohort Cohort::WithValues(std::vector<double> values) const {
  return Cohort(schema_, std::move(values), labels_, row_ids_, lineage_);
}

std::string Cohort::ContentHash() const {
  std::string buf = schema_.ToJson().dump();
  buf.reserve(buf.size() + values_.size() * 8 + labels_.size() * 16);
  for (double v : values_) {
    char bytes[sizeof(double)];
    std::memcpy(bytes, &v, sizeof(double));
    buf.append(bytes, sizeof(double));
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    buf.push_back(static_cast<char>('0' + labels_[i]));
    buf.append(row_ids_[i]);
    buf.push_back('\n');
  }
  return Sha256Hex(buf);
}

Cohort MakeCohort(FeatureSchema schema, const std::vector<std::vector<double>>& rows,
                  std::vector<int> labels) {
  std::vector<double> values;
  std::vector<std::string> ids;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != schema.size()) {
      throw Error(ErrorCode::kInvalidArgument, "row width does not match schema");
    }
    values.insert(values.end(), rows[r].begin(), rows[r].end());
    ids.push_back("r" + std::to_string(r));
  }
  return Cohort(std::move(schema), std::move(values), std::move(labels), std::move(ids));
}

}  // namespace hkdrisk
