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

#include "hkdrisk/evaluate/comparison.h"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "hkdrisk/common/error.h"
#include "hkdrisk/common/stats.h"

namespace hkdrisk {
namespace {

std::vector<double> Observed(const Cohort& c, std::size_t col) {
  std::vector<double> out;
  out.reserve(c.rows());
  for (std::size_t r = 0; r < c.rows(); ++r) {
    if (!IsMissing(c.value(r, col))) out.push_back(c.value(r, col));
  }
  return out;
}

FeatureStat Describe(const std::vector<double>& v) {
  FeatureStat s;
  s.count = v.size();
  if (!v.empty()) {
    s.mean = Mean(v);
    s.sd = SampleSd(v);
  }
  return s;
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

double ReportedP(double p) { return std::max(p, kReportedPFloor); }

}  // namespace

std::string FormatMeanSd(const FeatureStat& s) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f (%.2f)", s.mean, s.sd);
  return buf;
}

std::string FormatPValue(double p) {
  if (p < 0.001) return "< 0.001";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", p);
  return buf;
}

ComparisonTable CompareCohorts(const Cohort& a, const Cohort& b, std::string name_a,
                               std::string name_b) {
  if (!(a.schema() == b.schema())) {
    throw Error(ErrorCode::kSchema, "compared cohorts have different schemas");
  }
  ComparisonTable table;
  table.group_a = std::move(name_a);
  table.group_b = std::move(name_b);
  table.size_a = a.rows();
  table.size_b = b.rows();
  for (std::size_t c = 0; c < a.cols(); ++c) {
    const FeatureDef& def = a.schema().features()[c];
    const std::vector<double> va = Observed(a, c);
    const std::vector<double> vb = Observed(b, c);
    ComparisonRow row;
    row.feature = def.name;
    row.unit = def.unit;
    row.kind = def.kind;
    row.a = Describe(va);
    row.b = Describe(vb);
    if (va.size() >= 2 && vb.size() >= 2) row.test = WelchTTest(va, vb);
    table.rows.push_back(std::move(row));
  }
  return table;
}

ComparisonTable CompareByLabel(const Cohort& cohort) {
  std::vector<std::size_t> neg;
  std::vector<std::size_t> pos;
  for (std::size_t r = 0; r < cohort.rows(); ++r) {
    (cohort.labels()[r] == 1 ? pos : neg).push_back(r);
  }
  if (neg.empty() || pos.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "outcome comparison needs both classes");
  }
  return CompareCohorts(cohort.SelectRows(neg), cohort.SelectRows(pos), kSurvivorGroup,
                        kNonSurvivorGroup);
}

ComparisonTable CompareSplit(const Cohort& train, const Cohort& test) {
  return CompareCohorts(train, test, kTrainGroup, kTestGroup);
}

Json ComparisonTable::ToJson() const {
  Json j;
  j["groups"] = {{{"name", group_a}, {"size", size_a}}, {{"name", group_b}, {"size", size_b}}};
  Json out_rows = Json::array();
  for (const auto& r : rows) {
    Json row;
    row["feature"] = r.feature;
    row["unit"] = r.unit;
    row["kind"] = r.kind == FeatureKind::kBinary ? "binary" : "continuous";
    row["a"] = {{"mean", EncodeDouble(r.a.mean)}, {"sd", EncodeDouble(r.a.sd)}, {"count", r.a.count}};
    row["b"] = {{"mean", EncodeDouble(r.b.mean)}, {"sd", EncodeDouble(r.b.sd)}, {"count", r.b.count}};
    if (r.test) {
      row["t"] = EncodeDouble(r.test->t);
      row["df"] = EncodeDouble(r.test->df);
      row["p"] = EncodeDouble(ReportedP(r.test->p));
      row["degenerate"] = r.test->degenerate;
    } else {
      row["t"] = nullptr;
      row["df"] = nullptr;
      row["p"] = nullptr;
    }
    out_rows.push_back(std::move(row));
  }
  j["rows"] = std::move(out_rows);
  return j;
}

std::string ComparisonTable::ToCsv() const {
  std::ostringstream out;
  out << "feature,unit,kind,n_" << group_a << ",mean_" << group_a << ",sd_" << group_a << ",n_"
      << group_b << ",mean_" << group_b << ",sd_" << group_b << ",t,df,p\n";
  for (const auto& r : rows) {
    out << CsvField(r.feature) << ',' << CsvField(r.unit) << ','
        << (r.kind == FeatureKind::kBinary ? "binary" : "continuous") << ',' << r.a.count << ','
        << EncodeDouble(r.a.mean) << ',' << EncodeDouble(r.a.sd) << ',' << r.b.count << ','
        << EncodeDouble(r.b.mean) << ',' << EncodeDouble(r.b.sd) << ',';
    if (r.test) {
      out << EncodeDouble(r.test->t) << ',' << EncodeDouble(r.test->df) << ','
          << EncodeDouble(ReportedP(r.test->p));
    } else {
      out << "NA,NA,NA";
    }
    out << '\n';
  }
  return out.str();
}

std::string ComparisonTable::ToText() const {
  std::size_t w_feature = 7;
  std::size_t w_unit = 4;
  for (const auto& r : rows) {
    w_feature = std::max(w_feature, r.feature.size());
    w_unit = std::max(w_unit, r.unit.size());
  }
  char line[512];
  std::ostringstream out;
  const std::string head_a = group_a + " (n=" + std::to_string(size_a) + ")";
  const std::string head_b = group_b + " (n=" + std::to_string(size_b) + ")";
  std::snprintf(line, sizeof(line), "%-*s  %-*s  %-22s  %-22s  %s\n", static_cast<int>(w_feature),
                "Feature", static_cast<int>(w_unit), "Unit", head_a.c_str(), head_b.c_str(), "p");
  out << line;
  for (const auto& r : rows) {
    const std::string p = r.test ? FormatPValue(r.test->p) : "n/a";
    std::snprintf(line, sizeof(line), "%-*s  %-*s  %-22s  %-22s  %s\n",
                  static_cast<int>(w_feature), r.feature.c_str(), static_cast<int>(w_unit),
                  r.unit.c_str(), FormatMeanSd(r.a).c_str(), FormatMeanSd(r.b).c_str(), p.c_str());
    out << line;
  }
  return out.str();
}

}  // namespace hkdrisk
