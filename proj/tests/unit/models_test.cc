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
#include <fstream>
#include <numeric>

#include <gtest/gtest.h>

#include "hkdrisk/cohort/group_stats.h"
#include "hkdrisk/cohort/split.h"
#include "hkdrisk/cohort/synthetic.h"
#include "hkdrisk/common/error.h"
#include "hkdrisk/common/hash.h"
#include "hkdrisk/common/random.h"
#include "hkdrisk/evaluate/roc.h"
#include "hkdrisk/models/bundle.h"
#include "hkdrisk/models/cross_validation.h"
#include "hkdrisk/models/gbdt.h"
#include "hkdrisk/models/logistic.h"
#include "hkdrisk/models/naive_bayes.h"
#include "hkdrisk/models/shallow_nn.h"
#include "test_util.h"

namespace hkdrisk {
namespace {

Dataset MakeDataset(const std::vector<std::vector<double>>& rows, const std::vector<int>& y,
                    std::vector<FeatureKind> kinds = {}) {
  Dataset d;
  d.rows = rows.size();
  d.cols = rows.empty() ? 0 : rows[0].size();
  for (const auto& r : rows) d.x.insert(d.x.end(), r.begin(), r.end());
  d.y = y;
  d.kinds = kinds.empty() ? std::vector<FeatureKind>(d.cols, FeatureKind::kContinuous) : kinds;
  return d;
}

// x1, x2 ~ U[0, 1]; y = (x1 > 0.5) xor (x2 > 0.5); one noise column.
Dataset XorData(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<double>> rows;
  std::vector<int> y;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = Uniform01(rng), b = Uniform01(rng);
    rows.push_back({a, b, Uniform01(rng)});
    y.push_back((a > 0.5) != (b > 0.5));
  }
  return MakeDataset(rows, y);
}

// Labels from a noisy linear score over d features.
Dataset LinearData(std::size_t n, std::size_t d, std::uint64_t seed, double noise = 1.0) {
  Rng rng(seed);
  std::vector<std::vector<double>> rows;
  std::vector<int> y;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> r(d);
    double s = -0.5 * static_cast<double>(d) * 0.5;
    for (std::size_t j = 0; j < d; ++j) {
      r[j] = Uniform01(rng);
      s += r[j] * (j < 3 ? 3.0 : 0.0);
    }
    s -= 4.5 - 0.25 * static_cast<double>(d);
    y.push_back(s + noise * StandardNormal(rng) > 0.0);
    rows.push_back(std::move(r));
  }
  return MakeDataset(rows, y);
}

double Accuracy(const Classifier& model, const Dataset& data) {
  std::size_t hits = 0;
  for (std::size_t r = 0; r < data.rows; ++r) {
    hits += (model.PredictProba(data.row(r)) >= 0.5) == (data.y[r] == 1);
  }
  return static_cast<double>(hits) / static_cast<double>(data.rows);
}

double MeanLogLoss(const std::vector<double>& margins, const Dataset& data) {
  double s = 0.0;
  for (std::size_t r = 0; r < data.rows; ++r) {
    const double p = Sigmoid(margins[r]);
    s -= data.y[r] ? std::log(p) : std::log1p(-p);
  }
  return s / static_cast<double>(data.rows);
}

// ---- spec -------------------------------------------------------------------

TEST(SpecTest, JsonRoundTripPerFamily) {
  for (const ClassifierSpec& s : {CatBoostLike(3), LightGbmLike(4), XgBoostLike(5), LogisticBaseline(6),
                                  NaiveBayesBaseline(7), ShallowNnBaseline(8)}) {
    const ClassifierSpec back = ClassifierSpec::FromJson(s.ToJson());
    EXPECT_EQ(back, s) << s.name;
  }
}

TEST(SpecTest, ValidationNamesTheHyperparameter) {
  ClassifierSpec s = CatBoostLike();
  std::get<GbdtParams>(s.params).learning_rate = 0.0;
  try {
    s.Validate();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.field(), "learning_rate");
  }
  ClassifierSpec l = LogisticBaseline();
  std::get<LogisticParams>(l.params).C = -1.0;
  EXPECT_THROW(l.Validate(), Error);
  Json bad = ShallowNnBaseline().ToJson();
  bad["params"]["dropout"] = "1.5";
  EXPECT_THROW(ClassifierSpec::FromJson(bad), Error);
  Json unknown = LogisticBaseline().ToJson();
  unknown["family"] = "svm";
  EXPECT_THROW(ClassifierSpec::FromJson(unknown), Error);
}

TEST(SpecTest, DefaultGridSizes) {
  EXPECT_EQ(ExpandGrid(CatBoostLike(), GbdtLattice{}).size(), 24u);
  EXPECT_EQ(ExpandGrid(LogisticBaseline(), LogisticLattice{}).size(), 8u);
  EXPECT_EQ(ExpandGrid(ShallowNnBaseline(), ShallowNnLattice{}).size(), 4u);
}

// ---- inference contract -----------------------------------------------------

TEST(ClassifierTest, HandBuiltStumpGivesClosedFormSigmoid) {
  RegressionTree stump;
  stump.nodes = {{0, 0.5, 1, 2, 0.0, 2.0}, {-1, 0.0, -1, -1, -1.0, 1.0}, {-1, 0.0, -1, -1, 1.0, 1.0}};
  const GbdtModel model(2, 0.0, 1.0, {stump});
  EXPECT_NEAR(model.PredictProba(std::vector<double>{0.9, 0.0}), 0.731, 5e-4);
  EXPECT_NEAR(model.PredictProba(std::vector<double>{0.1, 0.0}), 0.269, 5e-4);
  EXPECT_DOUBLE_EQ(model.PredictProba(std::vector<double>{0.9, 0.0}), 1.0 / (1.0 + std::exp(-1.0)));
}

TEST(ClassifierTest, ZeroWeightLogisticIsOneHalf) {
  const LinearModel model(std::vector<double>(4, 0.0), 0.0);
  EXPECT_EQ(model.PredictProba(std::vector<double>{1, 2, 3, 4}), 0.5);
}

TEST(ClassifierTest, WrongDimensionThrows) {
  const LinearModel model(std::vector<double>(3, 0.0), 0.0);
  EXPECT_THROW(model.PredictProba(std::vector<double>{1.0, 2.0}), Error);
  const GbdtModel gbdt(3, 0.0, 0.1, {});
  EXPECT_THROW(gbdt.PredictProba(std::vector<double>(4, 0.0)), Error);
}

TEST(ClassifierTest, PredictionIsPure) {
  const Dataset data = LinearData(400, 5, 11);
  for (const ClassifierSpec& spec : {LightGbmLike(1), LogisticBaseline(), NaiveBayesBaseline()}) {
    const ClassifierPtr model = TrainClassifier(spec, data);
    const std::vector<double> x(data.row(7).begin(), data.row(7).end());
    const double first = model->PredictProba(x);
    for (int i = 0; i < 10000; ++i) ASSERT_EQ(model->PredictProba(x), first);
  }
}

TEST(ClassifierTest, RejectsSingleClassAndNonFinite) {
  Dataset one = MakeDataset({{0.1}, {0.2}}, {1, 1});
  EXPECT_THROW(TrainClassifier(LogisticBaseline(), one), Error);
  Dataset bad = MakeDataset({{0.1}, {NAN}}, {0, 1});
  EXPECT_THROW(TrainClassifier(LogisticBaseline(), bad), Error);
}

TEST(ClassifierTest, JsonRoundTripIsBitExact) {
  const Dataset data = LinearData(300, 4, 5);
  ClassifierSpec nn = ShallowNnBaseline(2);
  std::get<ShallowNnParams>(nn.params).epochs = 5;
  for (const ClassifierSpec& spec : {XgBoostLike(1), LogisticBaseline(), NaiveBayesBaseline(), nn}) {
    const ClassifierPtr model = TrainClassifier(spec, data);
    const ClassifierPtr back = ClassifierFromJson(Json::parse(model->ToJson().dump()));
    for (std::size_t r = 0; r < data.rows; ++r) {
      ASSERT_EQ(back->PredictProba(data.row(r)), model->PredictProba(data.row(r))) << spec.name;
    }
  }
}

// ---- GBDT -------------------------------------------------------------------

TEST(GbdtTest, ZeroTreesPredictPrevalence) {
  std::vector<std::vector<double>> rows;
  std::vector<int> y;
  for (int i = 0; i < 1000; ++i) {
    rows.push_back({i * 0.001, (i % 7) * 1.0});
    y.push_back(i < 128);
  }
  GbdtParams p;
  p.n_trees = 0;
  const GbdtModel model = FitGbdt(p, MakeDataset(rows, y), 0);
  for (const auto& x : rows) EXPECT_NEAR(model.PredictProba(x), 0.128, 1e-12);
}

TEST(GbdtTest, XorIsSeparatedWhileLogisticIsNot) {
  const Dataset train = XorData(2000, 1), test = XorData(2000, 2);
  GbdtParams p;
  p.n_trees = 100;
  p.max_depth = 3;
  const GbdtModel gbdt = FitGbdt(p, train, 0);
  EXPECT_GT(Accuracy(gbdt, test), 0.95);
  const LinearModel lin = FitLogistic(LogisticParams{}, train);
  EXPECT_NEAR(Accuracy(lin, test), 0.5, 0.05);
}

TEST(GbdtTest, TrainingLossIsMonotone) {
  const Dataset data = LinearData(1500, 6, 3);
  for (double eta : {0.05, 0.1, 0.3}) {
    GbdtParams p;
    p.n_trees = 60;
    p.max_depth = 4;
    p.learning_rate = eta;
    const GbdtModel model = FitGbdt(p, data, 9);
    double prev = INFINITY;
    for (std::size_t t = 0; t <= model.trees().size(); ++t) {
      std::vector<double> m(data.rows);
      for (std::size_t r = 0; r < data.rows; ++r) m[r] = model.StagedMargin(data.row(r), t);
      const double loss = MeanLogLoss(m, data);
      ASSERT_LE(loss, prev + 1e-12) << "eta " << eta << " stage " << t;
      prev = loss;
    }
  }
}

TEST(GbdtTest, CoversCountTrainingRowsAndBaseIsMeanMargin) {
  const Dataset data = LinearData(500, 3, 8);
  ClassifierSpec spec = LightGbmLike(4);
  std::get<GbdtParams>(spec.params).n_trees = 20;
  const auto model = std::dynamic_pointer_cast<const GbdtModel>(TrainClassifier(spec, data));
  ASSERT_TRUE(model);
  for (const auto& tree : model->trees()) {
    EXPECT_EQ(tree.nodes[0].cover, 500.0);
    for (const auto& n : tree.nodes) {
      if (!n.is_leaf()) {
        EXPECT_EQ(tree.nodes[n.left].cover + tree.nodes[n.right].cover, n.cover);
      }
    }
    EXPECT_LE(tree.depth(), 6);
  }
}

TEST(GbdtTest, SeedDeterminesSubsampledModel) {
  const Dataset data = LinearData(600, 5, 12);
  const auto a = TrainClassifier(LightGbmLike(7), data);
  const auto b = TrainClassifier(LightGbmLike(7), data);
  const auto c = TrainClassifier(LightGbmLike(8), data);
  EXPECT_EQ(a->ToJson(), b->ToJson());
  EXPECT_NE(a->ToJson(), c->ToJson());
}

TEST(GbdtTest, HistogramCutsAreBoundedAndSorted) {
  std::vector<double> col(5000);
  Rng rng(2);
  for (double& v : col) v = StandardNormal(rng);
  const auto cuts = CandidateCuts(col, true, 256);
  EXPECT_LE(cuts.size(), 255u);
  EXPECT_GE(cuts.size(), 250u);
  EXPECT_TRUE(std::is_sorted(cuts.begin(), cuts.end()));
  EXPECT_EQ(CandidateCuts(col, false, 256).size(), 4999u);
  EXPECT_EQ(CandidateCuts({0, 1, 1, 0}, true, 256), std::vector<double>{0.5});
  EXPECT_TRUE(CandidateCuts({3, 3, 3}, true, 256).empty());
}

// ---- logistic ---------------------------------------------------------------

TEST(LogisticTest, SeparableDataIsFitPerfectly) {
  std::vector<std::vector<double>> rows;
  std::vector<int> y;
  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    const double a = Uniform01(rng), b = Uniform01(rng);
    if (std::abs(a + b - 1.0) < 0.1) continue;
    rows.push_back({a, b});
    y.push_back(a + b > 1.0);
  }
  LogisticParams p;
  p.C = 100.0;
  testing::WarningCapture warnings;
  const LinearModel model = FitLogistic(p, MakeDataset(rows, y));
  EXPECT_TRUE(warnings.messages.empty());
  EXPECT_EQ(Accuracy(model, MakeDataset(rows, y)), 1.0);
}

TEST(LogisticTest, ConvergesToStationaryPoint) {
  const Dataset data = LinearData(800, 6, 21);
  for (Penalty pen : {Penalty::kL1, Penalty::kL2}) {
    LogisticParams p;
    p.penalty = pen;
    p.C = 0.5;
    testing::WarningCapture warnings;
    const LinearModel model = FitLogistic(p, data);
    EXPECT_TRUE(warnings.messages.empty());
    // Numerical gradient of the L2 objective vanishes at the optimum.
    if (pen == Penalty::kL2) {
      std::vector<double> g(data.cols, 0.0);
      for (std::size_t r = 0; r < data.rows; ++r) {
        const double resid = p.C * (model.PredictProba(data.row(r)) - data.y[r]);
        for (std::size_t j = 0; j < data.cols; ++j) g[j] += resid * data.at(r, j);
      }
      for (std::size_t j = 0; j < data.cols; ++j) EXPECT_NEAR(g[j] + model.weights()[j], 0.0, 1e-4);
    }
  }
}

TEST(LogisticTest, L1SparsityGrowsAsCShrinks) {
  const Dataset data = LinearData(600, 12, 33);
  std::size_t prev = 0;
  for (double C : {10.0, 1.0, 0.1, 0.01, 0.001}) {
    LogisticParams p;
    p.penalty = Penalty::kL1;
    p.C = C;
    const std::size_t zeros = FitLogistic(p, data).CountZeroWeights();
    EXPECT_GE(zeros, prev) << "C=" << C;
    prev = zeros;
  }
  EXPECT_EQ(prev, 12u);
}

// ---- naive Bayes ------------------------------------------------------------

TEST(NaiveBayesTest, ClosedFormMoments) {
  const Dataset data = MakeDataset({{1.0, 0}, {3.0, 1}, {10.0, 1}, {14.0, 1}}, {0, 0, 1, 1},
                                   {FeatureKind::kContinuous, FeatureKind::kBinary});
  NaiveBayesParams p;
  p.var_smoothing = 0.0;
  const NbModel nb = FitNaiveBayes(p, data);
  EXPECT_DOUBLE_EQ(nb.classes()[0].prior + nb.classes()[1].prior, 1.0);
  EXPECT_DOUBLE_EQ(nb.classes()[0].mean[0], 2.0);
  EXPECT_DOUBLE_EQ(nb.classes()[0].var[0], 1.0 + 1e-12);
  EXPECT_DOUBLE_EQ(nb.classes()[1].mean[0], 12.0);
  EXPECT_DOUBLE_EQ(nb.classes()[0].mean[1], (1.0 + 1.0) / (2.0 + 2.0));
  EXPECT_DOUBLE_EQ(nb.classes()[1].mean[1], (2.0 + 1.0) / (2.0 + 2.0));
}

TEST(NaiveBayesTest, SharedVarianceScalingKeepsDecisions) {
  // Equal priors and class-shared variances: the margin is linear in x with
  // slope scaled by 1/factor, so its sign cannot change.
  NbModel::ClassParams c0{0.5, {0.0, 1.0}, {1.0, 4.0}}, c1{0.5, {2.0, -1.0}, {1.0, 4.0}};
  const NbModel nb({FeatureKind::kContinuous, FeatureKind::kContinuous}, {c0, c1}, 1e-9);
  Rng rng(5);
  for (double factor : {0.1, 0.5, 3.0, 40.0}) {
    const NbModel scaled = nb.WithVarianceScale(factor);
    for (int i = 0; i < 2000; ++i) {
      const std::vector<double> x{4.0 * StandardNormal(rng), 4.0 * StandardNormal(rng)};
      const double m = nb.Margin(x);
      if (std::abs(m) < 1e-9) continue;
      ASSERT_EQ(m > 0, scaled.Margin(x) > 0);
    }
  }
}

// ---- shallow NN -------------------------------------------------------------

TEST(ShallowNnTest, AnalyticGradientMatchesFiniteDifferences) {
  const Dataset data = LinearData(5, 4, 17);
  Rng rng(3);
  NnWeights w;
  w.inputs = 4;
  w.hidden = 6;
  for (int i = 0; i < 24; ++i) w.w1.push_back(StandardNormal(rng));
  for (int i = 0; i < 6; ++i) w.b1.push_back(0.3 * StandardNormal(rng));
  for (int i = 0; i < 6; ++i) w.w2.push_back(StandardNormal(rng));
  w.b2 = 0.1;
  const std::vector<std::size_t> rows{0, 1, 2, 3, 4};
  const auto grad = NnLossGradient(w, data, rows);
  const auto flat = w.Flatten();
  for (std::size_t i = 0; i < flat.size(); ++i) {
    const double h = 1e-6;
    auto plus = flat, minus = flat;
    plus[i] += h;
    minus[i] -= h;
    const double fd = (NnLoss(NnWeights::Unflatten(4, 6, plus), data, rows) -
                       NnLoss(NnWeights::Unflatten(4, 6, minus), data, rows)) / (2 * h);
    const double denom = std::max({std::abs(fd), std::abs(grad[i]), 1e-8});
    EXPECT_LT(std::abs(fd - grad[i]) / denom, 1e-4) << "param " << i;
  }
}

TEST(ShallowNnTest, LearnsAndStaysInUnitInterval) {
  const Dataset train = LinearData(800, 4, 1, 0.3), test = LinearData(800, 4, 2, 0.3);
  ShallowNnParams p;
  p.epochs = 40;
  p.learning_rate = 5e-3;
  p.dropout = 0.2;
  const NnModel model = FitShallowNn(p, train, 6);
  EXPECT_GT(Accuracy(model, test), 0.8);
  EXPECT_LT(model.loss_history().back(), model.loss_history().front());
  for (std::size_t r = 0; r < test.rows; ++r) {
    const double prob = model.PredictProba(test.row(r));
    EXPECT_GT(prob, 0.0);
    EXPECT_LT(prob, 1.0);
  }
}

TEST(ShallowNnTest, DivergenceCitesStepSize) {
  const Dataset data = LinearData(200, 4, 1);
  ShallowNnParams p;
  p.learning_rate = 1e300;
  p.epochs = 20;
  try {
    FitShallowNn(p, data, 0);
    FAIL() << "expected divergence";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDivergence);
    EXPECT_NE(std::string(e.what()).find("learning_rate"), std::string::npos);
  }
}

// ---- pipeline, CV, bundle ---------------------------------------------------

Cohort HkdCohort(std::size_t n, std::uint64_t seed, double prevalence = 0.128) {
  return GenerateSyntheticCohort(PublishedOutcomeStats(), n, prevalence, seed);
}

ClassifierSpec SmallGbdt(int depth = 3, double eta = 0.1, int trees = 40) {
  GbdtParams p;
  p.max_depth = depth;
  p.learning_rate = eta;
  p.n_trees = trees;
  return {"gbdt", p, 1};
}

TEST(PipelineTest, ImputesMissingInputs) {
  const Cohort train = HkdCohort(600, 3);
  const auto names = train.schema().names();
  const FittedPipeline fitted = FitPipeline(train, names, LogisticBaseline());
  std::vector<double> row(names.size(), kMissing);
  const auto prepared = fitted.PrepareRow(row);
  for (std::size_t j = 0; j < row.size(); ++j) {
    EXPECT_EQ(prepared[j], fitted.scaling().Scale(j, fitted.imputation().fill[j]));
  }
  const double p = fitted.PredictProba(row);
  EXPECT_GT(p, 0.0);
  EXPECT_LT(p, 1.0);
  EXPECT_EQ(fitted.training_lineage(), train.lineage());
}

TEST(CrossValidationTest, SingleCellAndDuplicateTies) {
  const Cohort train = HkdCohort(500, 4);
  const auto names = train.schema().names();
  CvOptions opts;
  opts.k = 3;
  const CvResult one = CrossValidateGrid(train, names, {SmallGbdt()}, opts);
  ASSERT_EQ(one.cells.size(), 1u);
  EXPECT_EQ(one.best, 0u);
  EXPECT_EQ(one.cells[0].fold_auroc.size(), 3u);
  EXPECT_GT(one.cells[0].mean_auroc, 0.6);

  const CvResult dup = CrossValidateGrid(train, names, {SmallGbdt(), SmallGbdt(), SmallGbdt()}, opts);
  EXPECT_EQ(dup.cells[0].mean_auroc, dup.cells[2].mean_auroc);
  EXPECT_EQ(dup.best, 0u);
}

TEST(CrossValidationTest, TiesBreakTowardSmallerModel) {
  // Trees that cannot split are constant, so the tree count changes nothing
  // but the model size.
  const Cohort train = HkdCohort(400, 9);
  const auto names = train.schema().names();
  ClassifierSpec big = SmallGbdt(3, 0.1, 30), small = SmallGbdt(3, 0.1, 30);
  std::get<GbdtParams>(big.params).reg_lambda = 1.0;
  std::get<GbdtParams>(small.params).reg_lambda = 1.0;
  std::get<GbdtParams>(big.params).min_split_gain = 1e9;
  std::get<GbdtParams>(small.params).min_split_gain = 1e9;
  std::get<GbdtParams>(big.params).n_trees = 50;
  CvOptions opts;
  opts.k = 3;
  const CvResult r = CrossValidateGrid(train, names, {big, small}, opts);
  ASSERT_EQ(r.cells[0].mean_auroc, r.cells[1].mean_auroc);
  EXPECT_EQ(r.best, 1u);
}

TEST(CrossValidationTest, RejectsEmptyGridAndSingleClassFolds) {
  const Cohort train = HkdCohort(300, 5);
  EXPECT_THROW(CrossValidateGrid(train, train.schema().names(), {}, {}), Error);
  std::vector<std::size_t> rows;
  std::size_t pos = 0;
  for (std::size_t r = 0; r < train.rows(); ++r) {
    if (train.labels()[r] == 0 || pos++ < 3) rows.push_back(r);
  }
  const Cohort few = train.SelectRows(rows);
  CvOptions opts;
  opts.k = 5;
  opts.pipeline.smote = false;
  EXPECT_THROW(CrossValidateGrid(few, few.schema().names(), {SmallGbdt()}, opts), Error);
}

TEST(CrossValidationTest, CvEstimateTracksHeldOutAuroc) {
  const Cohort all = HkdCohort(13000, 21, 0.3);
  const CohortSplit split = StratifiedSplit(all, 10000.0 / 13000.0, 2);
  const auto names = all.schema().names();
  std::vector<ClassifierSpec> grid;
  for (int depth : {2, 4}) {
    for (double eta : {0.05, 0.1}) grid.push_back(SmallGbdt(depth, eta, 60));
  }
  CvOptions opts;
  opts.k = 5;
  opts.seed = 3;
  const CvResult cv = CrossValidateGrid(split.train, names, grid, opts);
  PipelineOptions po;
  const FittedPipeline refit = FitPipeline(split.train, names, cv.best_cell().spec, po);
  const double held = RocAuc(refit.Score(split.test));
  EXPECT_NEAR(cv.best_cell().mean_auroc, held, 0.02);
}

struct SealedFixture {
  Cohort train, test;
  FittedPipeline pipeline;
};

SealedFixture Fixture() {
  const Cohort all = HkdCohort(800, 31);
  CohortSplit split = StratifiedSplit(all, 0.3, 1);
  FittedPipeline p = FitPipeline(split.train, all.schema().names(), SmallGbdt(4, 0.1, 30));
  return {split.train, split.test, std::move(p)};
}

TEST(BundleTest, SaveLoadReproducesPredictionsBitExactly) {
  const SealedFixture fx = Fixture();
  BundleMetadata meta;
  meta.seed = 42;
  meta.created = "2024-01-01";
  const ModelBundle bundle = ModelBundle::Seal(fx.pipeline, fx.train.schema(), 0.4, meta,
                                               SummarizeByLabel(fx.train));
  const auto dir = testing::TempDir("bundle");
  bundle.Save(dir / "bundle.json");
  const ModelBundle loaded = ModelBundle::Load(dir / "bundle.json");
  EXPECT_EQ(loaded.hash(), bundle.hash());
  EXPECT_EQ(loaded.threshold(), 0.4);
  EXPECT_EQ(loaded.metadata().data_hash, fx.train.lineage());
  Rng rng(8);
  double max_delta = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto row = fx.test.row(UniformIndex(rng, fx.test.rows()));
    std::vector<double> x(row.begin(), row.end());
    if (i % 10 == 0) x[i % x.size()] = kMissing;
    max_delta = std::max(max_delta, std::abs(loaded.PredictProba(x) - bundle.PredictProba(x)));
  }
  EXPECT_EQ(max_delta, 0.0);
}

TEST(BundleTest, DetectsTamperingVersionAndMissingParts) {
  const SealedFixture fx = Fixture();
  const ModelBundle bundle = ModelBundle::Seal(fx.pipeline, fx.train.schema(), 0.5, {});
  Json tampered = bundle.ToJson();
  tampered["payload"]["threshold"] = "0.1";
  try {
    ModelBundle::FromJson(tampered);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIntegrity);
  }
  Json future = bundle.ToJson();
  future["format_version"] = 2;
  try {
    ModelBundle::FromJson(future);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupportedVersion);
  }
  Json incomplete = bundle.ToJson();
  incomplete["payload"].erase("scaling_plan");
  incomplete["content_hash"] = Sha256Hex(incomplete["payload"].dump());
  try {
    ModelBundle::FromJson(incomplete);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSchema);
    EXPECT_EQ(e.field(), "scaling_plan");
  }
}

TEST(BundleTest, SealRejectsPlansFromOtherData) {
  const SealedFixture fx = Fixture();
  const FittedPipeline other = FitPipeline(fx.test, fx.test.schema().names(), LogisticBaseline());
  const FittedPipeline mixed(fx.pipeline.spec(), other.imputation(), fx.pipeline.scaling(),
                             fx.pipeline.model_ptr(), fx.pipeline.training_lineage());
  try {
    ModelBundle::Seal(mixed, fx.train.schema(), 0.5, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIntegrity);
  }
}

}  // namespace
}  // namespace hkdrisk
