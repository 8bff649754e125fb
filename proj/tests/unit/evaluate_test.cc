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
#include <set>

#include <boost/math/distributions/students_t.hpp>
#include <gtest/gtest.h>

#include "hkdrisk/cohort/group_stats.h"
#include "hkdrisk/cohort/split.h"
#include "hkdrisk/cohort/synthetic.h"
#include "hkdrisk/common/error.h"
#include "hkdrisk/common/random.h"
#include "hkdrisk/evaluate/evaluation.h"
#include "test_util.h"

namespace hkdrisk {
namespace {

// O(n^2) concordance count in half units.
double PairwiseAuc(const std::vector<double>& s, const std::vector<int>& y) {
  std::int64_t twice = 0;
  std::int64_t pos = 0;
  std::int64_t neg = 0;
  for (int v : y) (v == 1 ? pos : neg) += 1;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (y[i] != 1) continue;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (y[j] != 0) continue;
      twice += s[i] > s[j] ? 2 : (s[i] == s[j] ? 1 : 0);
    }
  }
  return static_cast<double>(twice) / static_cast<double>(2 * pos * neg);
}

double Logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Binormal scores: negatives N(0, 1), positives N(shift, 1), squashed to (0, 1).
ScoredSet Binormal(std::size_t pos, std::size_t neg, double shift, std::uint64_t seed) {
  Rng rng(seed);
  ScoredSet s;
  for (std::size_t i = 0; i < pos + neg; ++i) {
    const int y = i < pos ? 1 : 0;
    s.scores.push_back(Logistic(StandardNormal(rng) + shift * y));
    s.labels.push_back(y);
    s.ids.push_back("r" + std::to_string(i));
  }
  return s;
}

TEST(Auc, WorkedExamples) {
  ScoredSet s{{0.1, 0.4, 0.35, 0.8}, {0, 0, 1, 1}, {}};
  EXPECT_EQ(RocAuc(s), 0.75);
  EXPECT_EQ(RocAuc(ScoredSet{{0.1, 0.2, 0.8, 0.9}, {0, 0, 1, 1}, {}}), 1.0);
  EXPECT_EQ(RocAuc(ScoredSet{{0.3, 0.3, 0.3, 0.3, 0.3}, {0, 1, 0, 1, 1}, {}}), 0.5);
  EXPECT_THROW(RocAuc(ScoredSet{{0.1, 0.2}, {1, 1}, {}}), Error);
}

TEST(Auc, MatchesPairwiseOracleExactly) {
  Rng rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + UniformIndex(rng, 1999);
    const int levels = trial % 3 == 0 ? 5 : (trial % 3 == 1 ? 50 : 0);
    std::vector<double> s(n);
    std::vector<int> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = Uniform01(rng) < 0.3 ? 1 : 0;
      const double u = Uniform01(rng);
      s[i] = levels ? std::floor(u * levels) / levels : u;
    }
    y[0] = 1;
    y[1] = 0;
    EXPECT_EQ(RocAuc(s, y), PairwiseAuc(s, y)) << "n=" << n;
  }
  std::vector<double> s2(2000);
  std::vector<int> y2(2000);
  for (std::size_t i = 0; i < 2000; ++i) {
    s2[i] = std::floor(Uniform01(rng) * 3) / 3;
    y2[i] = static_cast<int>(i % 2);
  }
  EXPECT_EQ(RocAuc(s2, y2), PairwiseAuc(s2, y2));
}

TEST(Auc, InvariantUnderMonotoneTransform) {
  const ScoredSet s = Binormal(60, 240, 1.2, 4);
  const double base = RocAuc(s);
  for (auto f : {+[](double x) { return x * x * x; }, +[](double x) { return std::sqrt(x); },
                 +[](double x) { return Logistic(10 * (x - 0.5)); }}) {
    ScoredSet t = s;
    for (double& v : t.scores) v = f(v);
    EXPECT_EQ(RocAuc(t), base);
  }
  std::vector<double> logits;
  for (double v : s.scores) logits.push_back(std::log(v / (1 - v)) * 3.0 - 7.0);
  EXPECT_EQ(RocAuc(logits, s.labels), base);
}

TEST(Auc, RocCurveEndpoints) {
  const ScoredSet s = Binormal(10, 30, 1.0, 2);
  const auto curve = RocCurve(s);
  EXPECT_EQ(curve.front().fpr, 0.0);
  EXPECT_EQ(curve.front().tpr, 0.0);
  EXPECT_EQ(curve.back().fpr, 1.0);
  EXPECT_EQ(curve.back().tpr, 1.0);
  double area = 0.0;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    EXPECT_GE(curve[i].fpr, curve[i - 1].fpr);
    EXPECT_GE(curve[i].tpr, curve[i - 1].tpr);
    area += (curve[i].fpr - curve[i - 1].fpr) * (curve[i].tpr + curve[i - 1].tpr) / 2;
  }
  EXPECT_NEAR(area, RocAuc(s), 1e-12);
}

TEST(Confusion, ThresholdExtremes) {
  const ScoredSet s{{0.1, 0.4, 0.35, 0.8, 0.6}, {0, 0, 1, 1, 0}, {}};
  MetricsRow m = ConfusionMetrics(s, 0.0);
  EXPECT_EQ(m.sensitivity, 1.0);
  EXPECT_EQ(m.specificity, 0.0);
  EXPECT_FALSE(m.npv.has_value());
  m = ConfusionMetrics(s, 1.0);
  EXPECT_EQ(m.sensitivity, 0.0);
  ASSERT_TRUE(m.npv.has_value());
  EXPECT_DOUBLE_EQ(*m.npv, 1.0 - 2.0 / 5.0);
  EXPECT_FALSE(m.ppv.has_value());
  EXPECT_EQ(m.ToJson()["ppv"], "n/a");
  EXPECT_THROW(ConfusionMetrics(s, 1.5), Error);
}

TEST(Confusion, HandTalliedTwentyPoints) {
  ScoredSet s;
  const std::set<int> positives{3, 8, 11, 12, 14, 15, 17, 18, 19};
  for (int i = 0; i < 20; ++i) {
    s.scores.push_back(i / 20.0);
    s.labels.push_back(positives.count(i) ? 1 : 0);
  }
  const MetricsRow m = ConfusionMetrics(s, 0.5);
  EXPECT_EQ(m.counts.tp, 7u);
  EXPECT_EQ(m.counts.fp, 3u);
  EXPECT_EQ(m.counts.tn, 8u);
  EXPECT_EQ(m.counts.fn, 2u);
  EXPECT_DOUBLE_EQ(m.sensitivity, 7.0 / 9.0);
  EXPECT_DOUBLE_EQ(m.specificity, 8.0 / 11.0);
  EXPECT_DOUBLE_EQ(*m.ppv, 0.7);
  EXPECT_DOUBLE_EQ(*m.npv, 0.8);
  EXPECT_DOUBLE_EQ(m.accuracy, 0.75);
  EXPECT_DOUBLE_EQ(m.f1, 14.0 / 19.0);
  const MetricsRow back = MetricsRow::FromJson(m.ToJson());
  EXPECT_EQ(back.f1, m.f1);
  EXPECT_EQ(back.counts.fn, 2u);
}

// Exhaustive sweep oracle for the threshold rule.
struct SweepBest {
  bool found = false;
  double threshold = 0.0;
  double spec = -1.0;
};

SweepBest Sweep(const ScoredSet& s, double min_sens) {
  SweepBest best;
  for (double t : CandidateThresholds(s)) {
    const MetricsRow m = ConfusionMetrics(s, t);
    const bool perfect = m.sensitivity == 1.0 && m.specificity == 1.0;
    if (m.sensitivity < min_sens || !(m.sensitivity > m.specificity || perfect)) continue;
    if (m.specificity >= best.spec) best = {true, t, m.specificity};
  }
  return best;
}

TEST(Threshold, TunedSetMatchesSweep) {
  // Shift 1.715 puts (sens 0.811, spec 0.798) on the population ROC curve.
  const ScoredSet s = Binormal(53, 357, 1.715, 21);
  const ThresholdChoice c = SelectThreshold(s);
  EXPECT_GE(c.sensitivity, 0.80);
  EXPECT_GT(c.sensitivity, c.specificity);
  const SweepBest oracle = Sweep(s, 0.80);
  ASSERT_TRUE(oracle.found);
  EXPECT_EQ(c.threshold, oracle.threshold);
  EXPECT_EQ(c.specificity, oracle.spec);
  const MetricsRow m = ConfusionMetrics(s, c.threshold);
  EXPECT_EQ(m.sensitivity, c.sensitivity);
  EXPECT_EQ(m.specificity, c.specificity);
}

TEST(Threshold, PropertyAgainstSweep) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    Rng rng(seed);
    const std::size_t pos = 2 + UniformIndex(rng, 40);
    const std::size_t neg = 2 + UniformIndex(rng, 200);
    const double min_sens = Uniform01(rng);
    ScoredSet s = Binormal(pos, neg, 3.0 * Uniform01(rng) - 0.5, seed);
    if (seed % 4 == 0) {
      for (double& v : s.scores) v = std::round(v * 10) / 10;
    }
    const SweepBest oracle = Sweep(s, min_sens);
    if (!oracle.found) {
      EXPECT_THROW(SelectThreshold(s, min_sens), Error);
      continue;
    }
    const ThresholdChoice c = SelectThreshold(s, min_sens);
    EXPECT_GE(c.sensitivity, min_sens);
    EXPECT_TRUE(c.sensitivity > c.specificity || (c.sensitivity == 1.0 && c.specificity == 1.0));
    EXPECT_EQ(c.threshold, oracle.threshold) << seed;
  }
}

TEST(Threshold, PerfectSeparationAndRelaxation) {
  const ScoredSet s{{0.1, 0.2, 0.3, 0.7, 0.8}, {0, 0, 0, 1, 1}, {}};
  const ThresholdChoice c = SelectThreshold(s);
  EXPECT_EQ(c.sensitivity, 1.0);
  EXPECT_EQ(c.specificity, 1.0);
  EXPECT_GT(c.threshold, 0.3);
  EXPECT_LT(c.threshold, 0.7);
  const ScoredSet noisy = Binormal(30, 70, 1.0, 3);
  const ThresholdChoice relaxed = SelectThreshold(noisy, 0.0);
  const SweepBest oracle = Sweep(noisy, 0.0);
  EXPECT_EQ(relaxed.threshold, oracle.threshold);
  EXPECT_GT(relaxed.sensitivity, relaxed.specificity);
}

TEST(Threshold, AlwaysFeasibleAtZero) {
  // Threshold 0 flags everyone: sensitivity 1 > specificity 0.
  const ScoredSet s{{0.9, 0.8, 0.1}, {0, 0, 1}, {}};
  const ThresholdChoice c = SelectThreshold(s, 1.0);
  EXPECT_EQ(c.sensitivity, 1.0);
  EXPECT_THROW(SelectThreshold(s, 1.01), Error);
}

TEST(Threshold, Candidates) {
  const ScoredSet s{{0.2, 0.4, 0.4, 1.0}, {0, 1, 0, 1}, {}};
  const std::vector<double> c = CandidateThresholds(s);
  ASSERT_EQ(c.size(), 4u);
  EXPECT_EQ(c[0], 0.0);
  EXPECT_NEAR(c[1], 0.3, 1e-15);
  EXPECT_NEAR(c[2], 0.7, 1e-15);
  EXPECT_EQ(c[3], 1.0);
}

TEST(Bootstrap, LargeSampleNarrow) {
  const ScoredSet s = Binormal(1280, 8720, 2.5, 1);
  const BootstrapCi ci = BootstrapAucCi(s, 500, 7);
  EXPECT_LT(ci.hi - ci.lo, 0.03);
  EXPECT_LE(ci.lo, RocAuc(s));
  EXPECT_GE(ci.hi, RocAuc(s));
}

TEST(Bootstrap, SmallSampleWide) {
  const ScoredSet s = Binormal(6, 14, 1.0, 5);
  const BootstrapCi ci = BootstrapAucCi(s, 2000, 7);
  EXPECT_GT(ci.hi - ci.lo, 0.1);
}

TEST(Bootstrap, DeterministicPerSeed) {
  const ScoredSet s = Binormal(40, 160, 1.0, 5);
  const BootstrapCi a = BootstrapAucCi(s, 300, 11);
  const BootstrapCi b = BootstrapAucCi(s, 300, 11);
  EXPECT_EQ(a.lo, b.lo);
  EXPECT_EQ(a.hi, b.hi);
  EXPECT_EQ(BootstrapAucSamples(s, 50, 11), BootstrapAucSamples(s, 50, 11));
  EXPECT_NE(BootstrapAucSamples(s, 50, 11), BootstrapAucSamples(s, 50, 12));
}

TEST(Bootstrap, WeightedAucMatchesExpandedSet) {
  const ScoredSet s{{0.1, 0.4, 0.35, 0.8, 0.4}, {0, 0, 1, 1, 1}, {}};
  const std::vector<std::uint32_t> w{2, 0, 3, 1, 1};
  std::vector<double> es;
  std::vector<int> ey;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::uint32_t k = 0; k < w[i]; ++k) {
      es.push_back(s.scores[i]);
      ey.push_back(s.labels[i]);
    }
  }
  const std::vector<std::size_t> order{0, 2, 1, 4, 3};
  EXPECT_EQ(WeightedRocAuc(s.scores, s.labels, order, w), PairwiseAuc(es, ey));
}

TEST(Welch, IdenticalSamples) {
  const std::vector<double> a{1.0, 2.5, 3.0, 4.2};
  const TTestResult r = WelchTTest(a, a);
  EXPECT_EQ(r.t, 0.0);
  EXPECT_EQ(r.p, 1.0);
}

TEST(Welch, ShiftedNormalsHighlySignificant) {
  Rng rng(1);
  std::vector<double> a(500);
  std::vector<double> b(500);
  for (double& x : a) x = StandardNormal(rng);
  for (double& x : b) x = 1.0 + StandardNormal(rng);
  const TTestResult r = WelchTTest(a, b);
  EXPECT_LT(r.p, 1e-10);
  EXPECT_LT(r.t, 0.0);
}

TEST(Welch, PValueMatchesReferenceDistribution) {
  for (double df : {1.0, 2.5, 7.0, 30.0, 412.7, 5000.0}) {
    const boost::math::students_t dist(df);
    for (double t : {0.01, 0.5, 1.0, 1.96, 3.0, 8.0, 25.0}) {
      const double ref = 2.0 * boost::math::cdf(boost::math::complement(dist, t));
      const double got = StudentTTwoSidedP(t, df);
      EXPECT_NEAR(got, ref, 1e-12 + 1e-9 * ref) << "df=" << df << " t=" << t;
      EXPECT_EQ(StudentTTwoSidedP(-t, df), got);
    }
  }
}

TEST(Welch, MatchesPooledForEqualVarianceEqualN) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a(10 + trial);
    for (double& x : a) x = StandardNormal(rng);
    std::vector<double> b(a.rbegin(), a.rend());
    const double shift = 0.05 * trial;
    for (double& x : b) x = -x + shift;
    const TTestResult w = WelchTTest(a, b);
    const TTestResult p = PooledTTest(a, b);
    EXPECT_NEAR(w.p, p.p, 1e-6);
    EXPECT_NEAR(w.df, p.df, 1e-6);
  }
}

TEST(Welch, DegenerateConventions) {
  const std::vector<double> c1{2.0, 2.0, 2.0};
  const std::vector<double> c2{3.0, 3.0};
  TTestResult r = WelchTTest(c1, c1);
  EXPECT_TRUE(r.degenerate);
  EXPECT_EQ(r.p, 1.0);
  r = WelchTTest(c1, c2);
  EXPECT_TRUE(r.degenerate);
  EXPECT_EQ(r.p, 0.0);
  EXPECT_LT(r.t, 0.0);
  EXPECT_THROW(WelchTTest(std::vector<double>{1.0}, c2), Error);
}

TEST(Welch, PublishedLactateGroupsSeparate) {
  int significant = 0;
  for (std::uint64_t rep = 0; rep < 100; ++rep) {
    Rng rng(DeriveSeed(2024, rep));
    std::vector<double> a(1191);
    std::vector<double> b(175);
    for (double& x : a) x = 1.96 + 0.88 * StandardNormal(rng);
    for (double& x : b) x = 2.84 + 2.17 * StandardNormal(rng);
    significant += WelchTTest(a, b).p < 0.001;
  }
  EXPECT_GE(significant, 95);
}

TEST(Comparison, SplitMostlyNonSignificantPerFeature) {
  const int kSeeds = 200;
  std::vector<int> non_sig(18, 0);
  for (int seed = 0; seed < kSeeds; ++seed) {
    const Cohort c = GenerateSyntheticCohort(PublishedOutcomeStats(), 1366, 0.128, 500 + seed);
    const CohortSplit s = StratifiedSplit(c, 0.3, seed);
    const ComparisonTable t = CompareSplit(s.train, s.test);
    for (std::size_t j = 0; j < t.rows.size(); ++j) non_sig[j] += t.rows[j].test->p > 0.05;
  }
  for (std::size_t j = 0; j < non_sig.size(); ++j) {
    EXPECT_GE(non_sig[j], static_cast<int>(0.9 * kSeeds)) << j;
  }
}

TEST(Comparison, NorepinephrineRateGap) {
  const Cohort c = GenerateSyntheticCohort(PublishedOutcomeStats(), 30000, 0.3, 12);
  const ComparisonTable t = CompareByLabel(c);
  EXPECT_EQ(t.group_a, kSurvivorGroup);
  const auto it = std::find_if(t.rows.begin(), t.rows.end(),
                               [](const ComparisonRow& r) { return r.feature == "Norepinephrine"; });
  ASSERT_NE(it, t.rows.end());
  EXPECT_NEAR(it->a.mean, 0.33, 0.02);
  EXPECT_NEAR(it->b.mean, 0.70, 0.02);
  EXPECT_LT(it->test->p, 0.001);
  EXPECT_NE(t.ToText().find("< 0.001"), std::string::npos);
}

TEST(Comparison, SingleFeatureTableAndFormats) {
  const Cohort c = MakeCohort(FeatureSchema({{"x", FeatureKind::kContinuous, "u"}}),
                              {{1.0}, {2.0}, {3.0}, {5.0}, {4.0}}, {0, 0, 1, 1, 0});
  const ComparisonTable t = CompareByLabel(c);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.size_a, 3u);
  const std::string csv = t.ToCsv();
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
  EXPECT_EQ(t.ToJson()["rows"].size(), 1u);
  EXPECT_EQ(FormatMeanSd({2.84, 2.17, 10}), "2.84 (2.17)");
  EXPECT_EQ(FormatPValue(0.0004), "< 0.001");
  EXPECT_EQ(FormatPValue(0.1234), "0.123");
}

TEST(Comparison, PFloorInOutput) {
  const Cohort c = MakeCohort(FeatureSchema({{"x", FeatureKind::kContinuous, "u"}}),
                              {{1.0}, {1.0}, {3.0}, {3.0}}, {0, 0, 1, 1});
  const ComparisonTable t = CompareByLabel(c);
  EXPECT_EQ(t.rows[0].test->p, 0.0);
  EXPECT_EQ(DecodeDouble(t.ToJson()["rows"][0]["p"]), kReportedPFloor);
}

TEST(Evaluation, ReportCarriesEverything) {
  const ScoredSet s = Binormal(50, 200, 1.5, 9);
  EvaluationOptions opt;
  opt.n_boot = 200;
  opt.seed = 3;
  const ModelEvaluation e = EvaluateScoredSet("gbdt", s, opt);
  EXPECT_EQ(*e.metrics.auroc, RocAuc(s));
  EXPECT_EQ(e.metrics.threshold, SelectThreshold(s).threshold);
  EXPECT_DOUBLE_EQ(e.prevalence(), 0.2);
  EvaluationReport report;
  report.models.push_back(e);
  const Json j = report.ToJson();
  EXPECT_EQ(j["models"][0]["model"], "gbdt");
  EXPECT_EQ(j["models"][0]["roc"].size(), e.roc.size());
  EXPECT_NE(report.MetricsCsv().find("gbdt,250,50,"), std::string::npos);
  opt.fixed_threshold = 0.5;
  EXPECT_EQ(EvaluateScoredSet("m", s, opt).metrics.threshold, 0.5);
}

}  // namespace
}  // namespace hkdrisk
