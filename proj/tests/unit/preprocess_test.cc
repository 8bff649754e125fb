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

#include <algorithm>
#include <cmath>
#include <cstring>

#include <gtest/gtest.h>

#include "hkdrisk/cohort/group_stats.h"
#include "hkdrisk/cohort/synthetic.h"
#include "hkdrisk/common/error.h"
#include "hkdrisk/common/random.h"
#include "hkdrisk/preprocess/imputer.h"
#include "hkdrisk/preprocess/scaler.h"
#include "hkdrisk/preprocess/smote.h"
#include "hkdrisk/preprocess/timeseries.h"
#include "test_util.h"

namespace hkdrisk {
namespace {

FeatureSchema ThreeFeatures() {
  return FeatureSchema({{"Lactate", FeatureKind::kContinuous, "mmol/L", ValidRange{0.0, 30.0}},
                        {"PTT", FeatureKind::kContinuous, "s", ValidRange{10.0, 150.0}},
                        {"Norepinephrine", FeatureKind::kBinary, "", std::nullopt}});
}

TEST(Imputer, MedianAndModeTieToZero) {
  const Cohort train = MakeCohort(ThreeFeatures(),
                                  {{1.0, 30, 0}, {2.0, kMissing, 0}, {9.0, 40, 1}, {kMissing, 50, 1}},
                                  {0, 1, 0, 1});
  const ImputationPlan plan = FitImputer(train);
  EXPECT_EQ(plan.fill[0], 2.0);
  EXPECT_EQ(plan.fill[1], 40.0);
  EXPECT_EQ(plan.fill[2], 0.0);
  EXPECT_EQ(plan.source_lineage, train.lineage());
}

TEST(Imputer, TestRowGetsTrainMedian) {
  const Cohort train = MakeCohort(ThreeFeatures(), {{1, 20, 1}, {2, 30, 1}, {3, 90, 0}}, {0, 1, 0});
  const Cohort test = MakeCohort(ThreeFeatures(), {{5, kMissing, kMissing}}, {1});
  const Cohort out = ApplyImputer(FitImputer(train), test);
  EXPECT_EQ(out.value(0, 1), 30.0);
  EXPECT_EQ(out.value(0, 2), 1.0);
  EXPECT_EQ(out.value(0, 0), 5.0);
  EXPECT_EQ(out.CountMissing(), 0u);
}

TEST(Imputer, IdentityWhenNothingMissing) {
  const Cohort c = GenerateSyntheticCohort(PublishedOutcomeStats(), 200, 0.3, 4);
  const Cohort out = ApplyImputer(FitImputer(c), c);
  EXPECT_EQ(std::memcmp(out.values().data(), c.values().data(), c.values().size() * sizeof(double)),
            0);
}

TEST(Imputer, OnlyMissingCellsChange) {
  Cohort c = GenerateSyntheticCohort(PublishedOutcomeStats(), 300, 0.3, 4);
  std::vector<double> values = c.values();
  Rng rng(9);
  for (double& v : values) {
    if (Uniform01(rng) < 0.2) v = kMissing;
  }
  const std::size_t col = 2;
  for (std::size_t r = 0; r < c.rows(); ++r) values[r * c.cols() + col] = kMissing;
  const Cohort holes = c.WithValues(values);
  const ImputationPlan plan = FitImputer(c);
  const Cohort out = ApplyImputer(plan, holes);
  EXPECT_EQ(out.CountMissing(), 0u);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!IsMissing(values[i])) {
      EXPECT_EQ(out.values()[i], values[i]);
    }
  }
  for (std::size_t r = 0; r < c.rows(); ++r) EXPECT_EQ(out.value(r, col), plan.fill[col]);
}

TEST(Imputer, Errors) {
  const Cohort train = MakeCohort(ThreeFeatures(), {{1, kMissing, 0}, {2, kMissing, 1}}, {0, 1});
  try {
    FitImputer(train);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("PTT"), std::string::npos);
  }
  const Cohort other = MakeCohort(testing::TwoFeatureSchema(), {{1, 0}}, {0});
  const Cohort ok = MakeCohort(ThreeFeatures(), {{1, 20, 0}}, {0});
  try {
    ApplyImputer(FitImputer(ok), other);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSchema);
  }
}

TEST(Imputer, JsonRoundTrip) {
  const Cohort c = GenerateSyntheticCohort(PublishedOutcomeStats(), 100, 0.3, 4);
  const ImputationPlan plan = FitImputer(c);
  const ImputationPlan back = ImputationPlan::FromJson(plan.ToJson());
  EXPECT_EQ(back.fill, plan.fill);
  EXPECT_EQ(back.schema, plan.schema);
  EXPECT_EQ(back.source_lineage, plan.source_lineage);
}

TEST(Timeseries, Summaries) {
  auto s = SummarizeTimeseries({{1, 60}, {2, 80}, {3, 100}}, 24);
  EXPECT_EQ(s.mean, 80);
  EXPECT_EQ(s.max, 100);
  EXPECT_EQ(s.min, 60);
  s = SummarizeTimeseries({{0, 72}}, 24);
  EXPECT_EQ(s.mean, 72);
  EXPECT_EQ(s.max, 72);
  EXPECT_EQ(s.min, 72);
  s = SummarizeTimeseries({{1, 50}, {2, 50}, {3, 110}, {30, 500}}, 24);
  EXPECT_EQ(s.mean, 70);
  EXPECT_EQ(s.max, 110);
  EXPECT_EQ(s.min, 50);
  EXPECT_EQ(s.count, 3);
  EXPECT_THROW(SummarizeTimeseries({{30, 1}}, 24), Error);
  EXPECT_THROW(SummarizeTimeseries({}, 24), Error);
}

TEST(Scaler, EndpointsConstantAndClamp) {
  const Cohort train = MakeCohort(ThreeFeatures(), {{0, 4, 0}, {5, 4, 1}, {10, 4, 1}}, {0, 1, 0});
  const ScalingPlan plan = FitMinMax(train);
  const Cohort scaled = ApplyMinMax(plan, train);
  EXPECT_EQ(scaled.value(0, 0), 0.0);
  EXPECT_EQ(scaled.value(1, 0), 0.5);
  EXPECT_EQ(scaled.value(2, 0), 1.0);
  for (std::size_t r = 0; r < 3; ++r) EXPECT_EQ(scaled.value(r, 1), 0.0);
  EXPECT_EQ(scaled.value(1, 2), 1.0);
  EXPECT_EQ(plan.Scale(0, 12.0), 1.0);
  EXPECT_EQ(plan.Scale(0, -3.0), 0.0);
  EXPECT_TRUE(std::isnan(plan.Scale(0, kMissing)));
  const ScalingPlan back = ScalingPlan::FromJson(plan.ToJson());
  EXPECT_EQ(back.x_min, plan.x_min);
  EXPECT_EQ(back.x_max, plan.x_max);
}

TEST(Scaler, NoLeakageCanary) {
  const Cohort train = MakeCohort(ThreeFeatures(), {{1, 20, 0}, {5, 40, 1}, {3, 30, 0}}, {0, 1, 0});
  const Cohort both = MakeCohort(ThreeFeatures(),
                                 {{1, 20, 0}, {5, 40, 1}, {3, 30, 0}, {9, 45, 1}}, {0, 1, 0, 1});
  const ScalingPlan a = FitMinMax(train);
  const ScalingPlan b = FitMinMax(both);
  EXPECT_NE(a.x_max, b.x_max);
  EXPECT_EQ(a.x_max[0], 5.0);
}

Cohort Imbalanced(std::size_t pos, std::size_t neg, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  for (std::size_t i = 0; i < pos + neg; ++i) {
    const int y = i < pos ? 1 : 0;
    rows.push_back({Uniform01(rng) * 10.0 + y, 10 + Uniform01(rng) * 100.0,
                    Uniform01(rng) < 0.5 ? 1.0 : 0.0});
    labels.push_back(y);
  }
  return MakeCohort(ThreeFeatures(), rows, labels);
}

TEST(Smote, InterpolationEndpoints) {
  const FeatureSchema s = ThreeFeatures();
  const std::vector<double> a{1.0, 20.0, 0.0};
  const std::vector<double> b{3.0, 60.0, 1.0};
  EXPECT_EQ(SmoteInterpolate(a, b, 0.0, s, true), a);
  EXPECT_EQ(SmoteInterpolate(a, b, 1.0, s, true), b);
  EXPECT_EQ(SmoteInterpolate(a, b, 1.0, s, false), b);
  const auto mid = SmoteInterpolate(a, b, 0.25, s, true);
  EXPECT_DOUBLE_EQ(mid[0], 1.5);
  EXPECT_EQ(mid[2], 0.0);
  EXPECT_DOUBLE_EQ(SmoteInterpolate(a, b, 0.25, s, false)[2], 0.25);
}

TEST(Smote, SegmentPropertyOverManyDraws) {
  const Cohort train = Imbalanced(30, 300, 1);
  const SmoteResult r = SmoteOversample(train, {5, 1.0, 17, true});
  ASSERT_GE(r.origins.size(), 1000u / 4);
  Rng rng(2);
  const FeatureSchema& s = train.schema();
  std::size_t checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t i = UniformIndex(rng, 30);
    const std::size_t j = UniformIndex(rng, 30);
    const double delta = Uniform01(rng);
    const auto syn = SmoteInterpolate(train.row(i), train.row(j), delta, s, trial % 2 == 0);
    for (std::size_t c = 0; c < s.size(); ++c) {
      const double lo = std::min(train.value(i, c), train.value(j, c));
      const double hi = std::max(train.value(i, c), train.value(j, c));
      EXPECT_GE(syn[c], lo);
      EXPECT_LE(syn[c], hi);
    }
    ++checked;
  }
  EXPECT_EQ(checked, 1000u);
  for (std::size_t k = 0; k < r.origins.size(); ++k) {
    const std::size_t row = train.rows() + k;
    const SyntheticOrigin& o = r.origins[k];
    EXPECT_EQ(r.cohort.labels()[row], 1);
    EXPECT_EQ(train.labels()[o.case_row], 1);
    EXPECT_EQ(train.labels()[o.neighbor_row], 1);
    EXPECT_NE(o.case_row, o.neighbor_row);
    for (std::size_t c = 0; c < s.size(); ++c) {
      const double lo = std::min(train.value(o.case_row, c), train.value(o.neighbor_row, c));
      const double hi = std::max(train.value(o.case_row, c), train.value(o.neighbor_row, c));
      EXPECT_GE(r.cohort.value(row, c), lo);
      EXPECT_LE(r.cohort.value(row, c), hi);
    }
  }
}

TEST(Smote, BalancesAndPreservesOriginals) {
  const Cohort train = Imbalanced(25, 200, 3);
  const SmoteResult r = SmoteOversample(train, {5, 1.0, 8, true});
  EXPECT_EQ(r.cohort.CountLabel(1), 200u);
  EXPECT_EQ(r.cohort.CountLabel(0), 200u);
  for (std::size_t i = 0; i < train.values().size(); ++i) {
    EXPECT_EQ(r.cohort.values()[i], train.values()[i]);
  }
  EXPECT_EQ(r.cohort.lineage(), train.lineage());
  const SmoteResult half = SmoteOversample(train, {5, 0.5, 8, true});
  EXPECT_EQ(half.cohort.CountLabel(1), 100u);
  const SmoteResult again = SmoteOversample(train, {5, 1.0, 8, true});
  EXPECT_EQ(again.cohort.values(), r.cohort.values());
}

TEST(Smote, NeighborsAreNearest) {
  const Cohort train = Imbalanced(20, 60, 5);
  const SmoteResult r = SmoteOversample(train, {3, 1.0, 1, true});
  for (const auto& o : r.origins) {
    std::vector<std::pair<double, std::size_t>> d;
    for (std::size_t j = 0; j < 20; ++j) {
      if (j == o.case_row) continue;
      double s = 0.0;
      for (std::size_t c = 0; c < train.cols(); ++c) {
        const double diff = train.value(o.case_row, c) - train.value(j, c);
        s += diff * diff;
      }
      d.emplace_back(s, j);
    }
    std::sort(d.begin(), d.end());
    bool within = false;
    for (int k = 0; k < 3; ++k) within |= d[k].second == o.neighbor_row;
    EXPECT_TRUE(within);
  }
}

TEST(Smote, ErrorsAndNoOp) {
  const Cohort tiny = Imbalanced(5, 50, 1);
  EXPECT_THROW(SmoteOversample(tiny, {5, 1.0, 0, true}), Error);
  const Cohort balanced = Imbalanced(40, 50, 1);
  testing::WarningCapture warnings;
  const SmoteResult r = SmoteOversample(balanced, {5, 0.5, 0, true});
  EXPECT_EQ(r.cohort.rows(), balanced.rows());
  EXPECT_TRUE(r.origins.empty());
  EXPECT_EQ(warnings.messages.size(), 1u);
  std::vector<double> values = balanced.values();
  values[0] = kMissing;
  EXPECT_THROW(SmoteOversample(balanced.WithValues(values), {5, 1.0, 0, true}), Error);
}

}  // namespace
}  // namespace hkdrisk
