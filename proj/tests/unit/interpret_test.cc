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

#include <gtest/gtest.h>

#include "hkdrisk/cohort/split.h"
#include "hkdrisk/cohort/synthetic.h"
#include "hkdrisk/common/error.h"
#include "hkdrisk/common/random.h"
#include "hkdrisk/evaluate/roc.h"
#include "hkdrisk/interpret/ablation.h"
#include "hkdrisk/interpret/ale.h"
#include "hkdrisk/interpret/shap.h"
#include "hkdrisk/models/logistic.h"
#include "shap_fixtures.h"

namespace hkdrisk {
namespace {

Dataset UniformData(std::size_t n, std::size_t d, std::uint64_t seed) {
  Rng rng(seed);
  Dataset data;
  data.rows = n;
  data.cols = d;
  data.kinds.assign(d, FeatureKind::kContinuous);
  for (std::size_t i = 0; i < n * d; ++i) data.x.push_back(Uniform01(rng));
  data.y.assign(n, 0);
  return data;
}

// ---- TreeSHAP ---------------------------------------------------------------

TEST(TreeShapTest, SingleStumpAttributesToItsFeature) {
  RegressionTree stump;
  stump.nodes = {{0, 0.5, 1, 2, 0.0, 100.0}, {-1, 0, -1, -1, -1.0, 50.0}, {-1, 0, -1, -1, 1.0, 50.0}};
  const GbdtModel model(3, 0.0, 1.0, {stump});
  const auto hi = TreeShap(model, std::vector<double>{0.9, 0.3, 0.7});
  EXPECT_DOUBLE_EQ(hi.base, 0.0);
  EXPECT_DOUBLE_EQ(hi.phi[0], 1.0);
  EXPECT_EQ(hi.phi[1], 0.0);
  EXPECT_EQ(hi.phi[2], 0.0);
  const auto lo = TreeShap(model, std::vector<double>{0.1, 0.3, 0.7});
  EXPECT_DOUBLE_EQ(lo.phi[0], -1.0);
}

TEST(TreeShapTest, SymmetricAndTreeSplitsCreditEqually) {
  // f = 1 iff x1 > 0.5 and x2 > 0.5, balanced covers.
  RegressionTree tree;
  tree.nodes = {{0, 0.5, 1, 2, 0, 4}, {-1, 0, -1, -1, 0.0, 2}, {1, 0.5, 3, 4, 0, 2},
                {-1, 0, -1, -1, 0.0, 1}, {-1, 0, -1, -1, 1.0, 1}};
  const GbdtModel model(2, 0.0, 1.0, {tree});
  const auto s = TreeShap(model, std::vector<double>{1.0, 1.0});
  EXPECT_NEAR(s.phi[0], s.phi[1], 1e-15);
  EXPECT_NEAR(s.Reconstructed(), 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(s.base, 0.25);
}

TEST(TreeShapTest, MatchesBruteForceOnCoverConsistentEnsembles) {
  Rng probe_rng(99);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::size_t d = 3 + seed % 4;
    const Dataset grid = testing::CartesianGrid(d, 3);
    const GbdtModel model = testing::RandomGridEnsemble(d, 3, grid, seed, 4, 3);
    for (int p = 0; p < 5; ++p) {
      std::vector<double> x(d);
      for (double& v : x) v = static_cast<double>(UniformIndex(probe_rng, 3));
      const auto fast = TreeShap(model, x);
      const auto exact = ExactShapBruteForce(model, x, grid);
      EXPECT_NEAR(fast.base, exact.base, 1e-9);
      for (std::size_t j = 0; j < d; ++j) EXPECT_NEAR(fast.phi[j], exact.phi[j], 1e-9) << seed;
    }
  }
}

TEST(TreeShapTest, FittedEnsembleOnGridMatchesBruteForce) {
  Dataset grid = testing::CartesianGrid(4, 4);
  Rng rng(5);
  for (std::size_t r = 0; r < grid.rows; ++r) {
    const auto x = grid.row(r);
    grid.y[r] = (x[0] + x[1] * x[2] + StandardNormal(rng) > 3.0);
  }
  GbdtParams p;
  p.n_trees = 15;
  p.max_depth = 4;
  const GbdtModel model = FitGbdt(p, grid, 1);
  for (std::size_t r = 0; r < grid.rows; r += 37) {
    const auto fast = TreeShap(model, grid.row(r));
    const auto exact = ExactShapBruteForce(model, grid.row(r), grid);
    for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(fast.phi[j], exact.phi[j], 1e-9);
  }
}

TEST(TreeShapTest, LocalAccuracyOnEighteenFeatureModel) {
  const Cohort cohort = GenerateSyntheticCohort(PublishedOutcomeStats(), 1500, 0.128, 4);
  const FittedPipeline fitted = FitPipeline(cohort, cohort.schema().names(), CatBoostLike(2));
  const Dataset data = fitted.Transform(cohort);
  double base_mean = 0.0;
  const Dataset train = PrepareTrainingData(cohort, cohort.schema().names(), {});
  for (std::size_t r = 0; r < train.rows; ++r) base_mean += fitted.model().PredictMargin(train.row(r));
  base_mean /= static_cast<double>(train.rows);
  for (std::size_t r = 0; r < 200; ++r) {
    const auto s = TreeShap(fitted.model(), data.row(r));
    EXPECT_NEAR(s.Reconstructed(), fitted.model().PredictMargin(data.row(r)), 1e-6);
    if (r == 0) {
      EXPECT_NEAR(s.base, base_mean, 1e-9);
    }
  }
}

TEST(TreeShapTest, NullPlayerGetsZero) {
  const Dataset grid = testing::CartesianGrid(3, 3);
  RegressionTree tree;
  tree.nodes.emplace_back();
  Rng rng(2);
  // Only features 0 and 2 appear.
  testing::GrowRandomTree(tree, 0, {{0, 2}, {0, 0}, {0, 2}}, 0, 3, rng);
  const GbdtModel model = GbdtModel(3, 0.0, 1.0, {tree}).WithCovers(grid);
  const auto s = TreeShap(model, std::vector<double>{2, 1, 0});
  EXPECT_EQ(s.phi[1], 0.0);
  EXPECT_NEAR(ExactShapBruteForce(model, std::vector<double>{2, 1, 0}, grid).phi[1], 0.0, 1e-12);
}

TEST(TreeShapTest, RejectsNonTreeModels) {
  const LinearModel lin({1.0, 2.0}, 0.0);
  try {
    TreeShap(static_cast<const Classifier&>(lin), std::vector<double>{0, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("ExactShapBruteForce"), std::string::npos);
  }
}

// ---- brute force ------------------------------------------------------------

TEST(BruteShapTest, AdditiveModelGivesCenteredTerms) {
  const LinearModel lin({2.0, -3.0, 0.5}, 0.7);
  const Dataset bg = UniformData(30, 3, 1);
  std::vector<double> mean(3, 0.0);
  for (std::size_t r = 0; r < bg.rows; ++r) {
    for (std::size_t j = 0; j < 3; ++j) mean[j] += bg.at(r, j) / 30.0;
  }
  const std::vector<double> x{0.9, 0.1, 0.4};
  const auto s = ExactShapBruteForce(lin, x, bg);
  for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(s.phi[j], lin.weights()[j] * (x[j] - mean[j]), 1e-12);
}

TEST(BruteShapTest, BackgroundEqualToProbeGivesZero) {
  const LinearModel lin({2.0, -3.0}, 0.1);
  Dataset bg;
  bg.rows = 1;
  bg.cols = 2;
  bg.x = {0.3, 0.6};
  bg.y = {0};
  bg.kinds.assign(2, FeatureKind::kContinuous);
  const auto s = ExactShapBruteForce(lin, bg.x, bg, ShapSpace::kProbability);
  for (double p : s.phi) EXPECT_EQ(p, 0.0);
}

TEST(BruteShapTest, LocalAccuracyOnEighteenFeatureLogistic) {
  const Cohort cohort = GenerateSyntheticCohort(PublishedOutcomeStats(), 800, 0.2, 6);
  const FittedPipeline fitted = FitPipeline(cohort, cohort.schema().names(), LogisticBaseline());
  Dataset data = fitted.Transform(cohort);
  Dataset bg = data;
  bg.rows = 8;
  bg.x.resize(8 * bg.cols);
  bg.y.resize(8);
  for (std::size_t r = 100; r < 105; ++r) {
    for (ShapSpace space : {ShapSpace::kLogOdds, ShapSpace::kProbability}) {
      const auto s = ExactShapBruteForce(fitted.model(), data.row(r), bg, space);
      const double f = space == ShapSpace::kLogOdds ? fitted.model().PredictMargin(data.row(r))
                                                     : fitted.model().PredictProba(data.row(r));
      EXPECT_NEAR(s.Reconstructed(), f, 1e-6);
    }
  }
}

TEST(BruteShapTest, RefusesTooManyFeatures) {
  const LinearModel lin(std::vector<double>(21, 0.1), 0.0);
  const Dataset bg = UniformData(2, 21, 1);
  EXPECT_THROW(ExactShapBruteForce(lin, bg.row(0), bg), Error);
}

TEST(BruteShapTest, ProbabilityViewSumsToProbability) {
  const LinearModel lin({2.0, -3.0}, 0.1);
  const Dataset bg = UniformData(20, 2, 3);
  const auto s = ToProbabilitySpace(ExactShapBruteForce(lin, bg.row(4), bg));
  EXPECT_NEAR(s.Reconstructed(), lin.PredictProba(bg.row(4)), 1e-12);
}

// ---- ALE ----------------------------------------------------------------------

TEST(AleTest, LinearScorerRecoversSlope) {
  const Dataset data = UniformData(10000, 2, 7);
  const auto f = [](std::span<const double> x) { return 2.0 * x[0]; };
  const AleCurve curve = ComputeAle(f, data, 0, 10, "x");
  double dev = 0.0;
  for (std::size_t k = 0; k < curve.edges.size(); ++k) {
    dev = std::max(dev, std::abs(curve.effect[k] - (2.0 * curve.edges[k] - 1.0)));
  }
  EXPECT_LT(dev, 0.02);
  std::size_t total = 0;
  for (auto c : curve.counts) total += c;
  EXPECT_EQ(total, 10000u);
}

TEST(AleTest, CenteredCurveHasZeroWeightedMean) {
  Dataset data = UniformData(3000, 3, 8);
  for (double& v : data.x) v = v * v;
  const auto f = [](std::span<const double> x) { return std::sin(6 * x[0]) + x[1] * x[0]; };
  const AleCurve curve = ComputeAle(f, data, 0, 13);
  const auto mids = curve.BinValues();
  double s = 0.0;
  for (std::size_t k = 0; k < mids.size(); ++k) s += curve.counts[k] * mids[k];
  EXPECT_NEAR(s / 3000.0, 0.0, 1e-9);
}

TEST(AleTest, IgnoredFeatureIsIdenticallyZero) {
  const Dataset data = UniformData(500, 2, 9);
  const auto f = [](std::span<const double> x) { return std::exp(x[0]); };
  const AleCurve curve = ComputeAle(f, data, 1);
  for (double e : curve.effect) EXPECT_EQ(e, 0.0);
}

TEST(AleTest, StepScorerJumpsInTheBinHoldingTheStep) {
  const Dataset data = UniformData(20000, 1, 10);
  const auto f = [](std::span<const double> x) { return x[0] > 0.5 ? 1.0 : 0.0; };
  const AleCurve curve = ComputeAle(f, data, 0, 10);
  for (std::size_t k = 0; k + 1 < curve.edges.size(); ++k) {
    const double jump = curve.effect[k + 1] - curve.effect[k];
    if (curve.edges[k] < 0.5 && curve.edges[k + 1] >= 0.5) {
      EXPECT_NEAR(jump, 1.0, 1e-12);
    } else {
      EXPECT_EQ(jump, 0.0);
    }
  }
}

TEST(AleTest, HeavyTiesMergeEmptyBinsAndConstantIsFlagged) {
  Dataset data = UniformData(1000, 1, 11);
  for (std::size_t r = 0; r < 1000; ++r) data.x[r] = r < 700 ? 0.0 : data.x[r];
  const auto f = [](std::span<const double> x) { return x[0]; };
  const AleCurve curve = ComputeAle(f, data, 0, 10);
  for (auto c : curve.counts) EXPECT_GT(c, 0u);
  EXPECT_TRUE(std::is_sorted(curve.edges.begin(), curve.edges.end()));

  for (double& v : data.x) v = 3.0;
  const AleCurve flat = ComputeAle(f, data, 0, 10);
  EXPECT_TRUE(flat.constant_feature);
  for (double e : flat.effect) EXPECT_EQ(e, 0.0);
}

TEST(AleTest, BinaryFeatureIsRejected) {
  Dataset data = UniformData(10, 1, 1);
  data.kinds[0] = FeatureKind::kBinary;
  EXPECT_THROW(ComputeAle([](std::span<const double>) { return 0.0; }, data, 0), Error);
}

// ---- ablation -----------------------------------------------------------------

Cohort PlantedCohort(std::size_t n, std::uint64_t seed) {
  std::vector<FeatureDef> defs;
  for (const char* name : {"signal", "weak", "noise1", "noise2"}) defs.push_back({name, FeatureKind::kContinuous, ""});
  Rng rng(seed);
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = StandardNormal(rng), w = StandardNormal(rng);
    rows.push_back({s, w, StandardNormal(rng), StandardNormal(rng)});
    labels.push_back(2.0 * s + 0.5 * w + StandardNormal(rng) > 1.0);
  }
  return MakeCohort(FeatureSchema(defs), rows, labels);
}

TEST(AblationTest, SignalRemovalHurtsMostAndNoiseIsWithinBand) {
  const Cohort train = PlantedCohort(1500, 1), test = PlantedCohort(1500, 2);
  const std::vector<std::string> features{"signal", "weak", "noise1", "noise2"};
  AblationOptions opts;
  opts.n_boot = 300;
  opts.seed = 4;
  opts.pipeline.smote = false;
  const ClassifierSpec spec = LogisticBaseline();
  const FittedPipeline full = FitPipeline(train, features, spec, opts.pipeline);
  const AblationResult result = AblationStudy(train, test, features, spec, opts);
  ASSERT_EQ(result.rows.size(), 5u);
  EXPECT_TRUE(result.rows[0].removed.empty());
  EXPECT_EQ(result.rows[1].removed, "signal");
  EXPECT_EQ(result.baseline_auroc, RocAuc(full.Score(test)));
  for (const char* noise : {"noise1", "noise2"}) {
    const AblationRow* row = result.Find(noise);
    ASSERT_TRUE(row);
    EXPECT_LT(std::abs(row->delta), std::max(2.0 * row->delta_sd, 1e-9)) << noise;
  }
  for (std::size_t i = 2; i < result.rows.size(); ++i) EXPECT_LE(result.rows[i - 1].delta, result.rows[i].delta);

  const AblationResult reused = AblationStudy(train, test, features, spec, opts, &full);
  EXPECT_EQ(reused.ToJson(), result.ToJson());
}

TEST(AblationTest, RemovingTheOnlyFeatureIsAnError) {
  const Cohort train = PlantedCohort(100, 1);
  EXPECT_THROW(AblationStudy(train, train, {"signal"}, LogisticBaseline()), Error);
}

}  // namespace
}  // namespace hkdrisk
