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

#include "hkdrisk/cohort/csv.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "hkdrisk/common/error.h"
#include "hkdrisk/common/json_util.h"
#include "hkdrisk/common/log.h"

namespace hkdrisk {
namespace {

std::vector<std::string> SplitLine(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
    } else {
      cell.push_back(c);
    }
  }
  cells.push_back(std::move(cell));
  return cells;
}

std::string Trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::optional<double> ParseNumber(const std::string& text) {
  double v = 0.0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  if (begin != end && *begin == '+') ++begin;
  auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc() || res.ptr != end) return std::nullopt;
  return v;
}

std::string CsvEscape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

Cohort ParseCohortCsv(std::istream& in, const FeatureSchema& schema,
                      const CsvLoadOptions& options, const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kParse, source + ": empty file");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  const auto header = SplitLine(line);

  // column position -> schema index; -1 label, -2 row id
  std::vector<int> mapping(header.size());
  std::vector<bool> seen(schema.size(), false);
  bool has_label = false;
  int id_col = -1;
  for (std::size_t c = 0; c < header.size(); ++c) {
    const std::string name = Trim(header[c]);
    if (name == schema.label_name()) {
      mapping[c] = -1;
      has_label = true;
    } else if (name == kRowIdColumn) {
      mapping[c] = -2;
      id_col = static_cast<int>(c);
    } else if (auto idx = schema.IndexOf(name)) {
      if (seen[*idx]) throw Error(ErrorCode::kSchema, "duplicate column \"" + name + "\"", name);
      seen[*idx] = true;
      mapping[c] = static_cast<int>(*idx);
    } else {
      throw Error(ErrorCode::kSchema, source + ": unknown column \"" + name + "\"", name);
    }
  }
  if (!has_label) {
    throw Error(ErrorCode::kSchema, source + ": missing label column", schema.label_name());
  }
  for (std::size_t i = 0; i < schema.size(); ++i) {
    if (!seen[i]) {
      throw Error(ErrorCode::kSchema,
                  source + ": missing feature column \"" + schema.feature(i).name + "\"",
                  schema.feature(i).name);
    }
  }

  const std::size_t d = schema.size();
  std::vector<double> values;
  std::vector<int> labels;
  std::vector<std::string> ids;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    auto cells = SplitLine(line);
    std::string row_id = "row" + std::to_string(line_no);
    if (id_col >= 0 && static_cast<std::size_t>(id_col) < cells.size()) {
      const std::string id = Trim(cells[id_col]);
      if (!id.empty()) row_id = id;
    }
    if (cells.size() != header.size()) {
      throw Error(ErrorCode::kParse,
                  source + ": row " + row_id + " has " + std::to_string(cells.size()) +
                      " cells, expected " + std::to_string(header.size()));
    }
    std::vector<double> row(d, kMissing);
    std::optional<int> label;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const int target = mapping[c];
      if (target == -2) continue;
      const std::string text = Trim(cells[c]);
      const bool missing = text.empty() || text == "NA";
      if (target == -1) {
        if (text == "0" || text == "1") {
          label = text == "1" ? 1 : 0;
        } else {
          throw Error(ErrorCode::kParse,
                      source + ": row " + row_id + " label must be 0 or 1, got \"" + text + "\"",
                      schema.label_name());
        }
        continue;
      }
      if (missing) continue;
      const auto& def = schema.feature(static_cast<std::size_t>(target));
      auto v = ParseNumber(text);
      if (!v) {
        throw Error(ErrorCode::kParse,
                    source + ": row " + row_id + " non-numeric value \"" + text + "\" in " +
                        def.name,
                    def.name);
      }
      if (def.valid_range && !def.valid_range->Contains(*v)) {
        if (options.range_policy == RangePolicy::kReject) {
          throw Error(ErrorCode::kRange,
                      source + ": row " + row_id + " value " + text + " for " + def.name +
                          " outside [" + EncodeDouble(def.valid_range->lo) + ", " +
                          EncodeDouble(def.valid_range->hi) + "]",
                      def.name);
        }
        const double clamped = std::clamp(*v, def.valid_range->lo, def.valid_range->hi);
        LogWarning(source + ": row " + row_id + " clamped " + def.name + " from " + text +
                   " to " + EncodeDouble(clamped));
        *v = clamped;
      }
      row[static_cast<std::size_t>(target)] = *v;
    }
    values.insert(values.end(), row.begin(), row.end());
    labels.push_back(*label);
    ids.push_back(std::move(row_id));
  }
  return Cohort(schema, std::move(values), std::move(labels), std::move(ids));
}

Cohort LoadCohortCsv(const std::filesystem::path& path, const FeatureSchema& schema,
                     const CsvLoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kNotFound, "cannot open " + path.string());
  return ParseCohortCsv(in, schema, options, path.string());
}

std::string FormatCohortCsv(const Cohort& cohort) {
  std::ostringstream out;
  out << kRowIdColumn;
  for (const auto& f : cohort.schema().features()) out << ',' << CsvEscape(f.name);
  out << ',' << cohort.schema().label_name() << '\n';
  for (std::size_t r = 0; r < cohort.rows(); ++r) {
    out << CsvEscape(cohort.row_ids()[r]);
    for (double v : cohort.row(r)) out << ',' << (IsMissing(v) ? "NA" : EncodeDouble(v));
    out << ',' << cohort.labels()[r] << '\n';
  }
  return out.str();
}

void WriteCohortCsv(const std::filesystem::path& path, const Cohort& cohort) {
  WriteTextFile(path, FormatCohortCsv(cohort));
}

}  // namespace hkdrisk
