/*
 * Copyright 2026 The boosthpo Authors.
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

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "boosthpo/dataset.hpp"
#include "boosthpo/error.hpp"
#include "boosthpo/gbdt/binning.hpp"
#include "boosthpo/gbdt/booster.hpp"
#include "boosthpo/gbdt/goss.hpp"
#include "boosthpo/gbdt/tree.hpp"
#include "boosthpo/metrics.hpp"
#include "boosthpo/random.hpp"
#include "oracles.hpp"

namespace boosthpo::gbdt {
namespace {

using data::DatasetBuilder;
using data::Task;

data::LabeledDataset Column(const std::vector<double>& xs, const std::vector<int>& ys) {
  DatasetBuilder b(Task::Binary());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    b.AddDenseRow(ys[i], std::span<const double>(&xs[i], 1));
  }
  return std::move(b).Build(1);
}

TEST(Binning, TwoDistinctValuesGiveTwoBins) {
  const auto d = Column({0, 1, 1, 0, 1}, {0, 1, 1, 0, 1});
  const auto binned = BuildBins(d, 256);
  EXPECT_EQ(binned.num_bins_used(0), 2);
  ASSERT_EQ(binned.boundaries[0].size(), 1u);
  EXPECT_DOUBLE_EQ(binned.boundaries[0][0], 0.5);
  EXPECT_EQ(binned.bin_index[0], (std::vector<BinId>{0, 1, 1, 0, 1}));
}

TEST(Binning, ConstantFeatureIsNeverSplit) {
  const auto d = Column({3, 3, 3, 3}, {0, 1, 0, 1});
  const auto binned = BuildBins(d, 16);
  EXPECT_EQ(binned.num_bins_used(0), 1);
  HyperParams hp;
  hp.max_depth = 3;
  std::vector<GradientPair> grads{{-1, 1}, {1, 1}, {-1, 1}, {1, 1}};
  const Tree tree = GrowTree(binned, grads, AllRows(4), hp, std::vector<std::uint32_t>{0});
  EXPECT_EQ(tree.nodes().size(), 1u);
}

TEST(Binning, UniformQuartilesMatchSortOracle) {
  Rng rng(42);
  std::vector<double> xs(1000);
  for (double& x : xs) x = UniformUnit(rng);
  const auto boundaries = ProposeBoundaries(xs, 4);
  ASSERT_EQ(boundaries.size(), 3u);
  auto sorted = xs;
  for (int k = 1; k <= 3; ++k) {
    // Independent quantile: the cut must separate order statistics idx-1 and
    // idx, found by nth_element.
    const std::size_t idx = static_cast<std::size_t>(k) * xs.size() / 4;
    std::nth_element(sorted.begin(), sorted.begin() + idx, sorted.end());
    const double upper = sorted[idx];
    const double lower = *std::max_element(sorted.begin(), sorted.begin() + idx);
    EXPECT_GT(boundaries[k - 1], lower);
    EXPECT_LE(boundaries[k - 1], upper);
    EXPECT_NEAR(boundaries[k - 1], 0.25 * k, 0.05);
  }
}

TEST(Binning, PropertyBoundariesAscendingAndRebinningIsExact) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    Rng rng(seed);
    const auto d = data::MakeSynthetic(50 + seed * 40, 3, Task::Binary(), 1.0, seed);
    const int bins = 2 + static_cast<int>(UniformIndex(rng, 40));
    const auto binned = BuildBins(d, bins);
    for (std::size_t f = 0; f < binned.num_features(); ++f) {
      const auto& b = binned.boundaries[f];
      EXPECT_LE(binned.num_bins_used(f), bins);
      for (std::size_t i = 1; i < b.size(); ++i) EXPECT_LT(b[i - 1], b[i]);
      const auto col = d.DenseColumn(f);
      for (std::size_t r = 0; r < col.size(); ++r) {
        EXPECT_LT(binned.bin_index[f][r], binned.num_bins_used(f));
        EXPECT_EQ(binned.bin_index[f][r], BinOf(b, col[r]));
      }
    }
    const auto again = ApplyBins(d, binned.boundaries);
    EXPECT_EQ(again.bin_index, binned.bin_index);
  }
}

TEST(Gradients, BinaryAtZeroMargin) {
  const std::vector<double> m{0.0};
  const std::vector<int> y{1};
  const auto g = ComputeGradients(m, y, Objective::BinaryLogistic());
  EXPECT_DOUBLE_EQ(g[0].g, -0.5);
  EXPECT_DOUBLE_EQ(g[0].h, 0.25);
}

TEST(Gradients, UniformSoftmax) {
  const std::vector<double> m(5, 0.0);
  const std::vector<int> y{3};
  const auto g = ComputeGradients(m, y, Objective::MulticlassSoftmax(5));
  for (int k = 0; k < 5; ++k) {
    EXPECT_NEAR(g[k].g, k == 3 ? -0.8 : 0.2, 1e-15);
    EXPECT_NEAR(g[k].h, 0.16, 1e-15);
  }
}

TEST(Gradients, SaturatedBinary) {
  const std::vector<double> m{20.0};
  const std::vector<int> y{1};
  const auto g = ComputeGradients(m, y, Objective::BinaryLogistic());
  EXPECT_LT(std::abs(g[0].g), 1e-8);
  EXPECT_LT(g[0].h, 1e-8);
  EXPECT_GE(g[0].h, 0.0);
}

TEST(Gradients, OneVsAllIsPerClassLogistic) {
  const std::vector<double> m{0.0, 1.0, -2.0};
  const std::vector<int> y{1};
  const auto g = ComputeGradients(m, y, Objective::OneVsAll(3));
  EXPECT_DOUBLE_EQ(g[0].g, 0.5);
  EXPECT_DOUBLE_EQ(g[1].g, Sigmoid(1.0) - 1.0);
  EXPECT_DOUBLE_EQ(g[2].h, Sigmoid(-2.0) * (1 - Sigmoid(-2.0)));
}

TEST(Gradients, RejectsNonFiniteMargin) {
  const std::vector<double> m{std::nan("")};
  const std::vector<int> y{1};
  try {
    ComputeGradients(m, y, Objective::BinaryLogistic());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonFiniteMargin);
  }
}

TEST(SplitGain, Examples) {
  EXPECT_EQ(SplitGain(0, 1, 0, 1, 1), 0.0);
  EXPECT_DOUBLE_EQ(SplitGain(2, 1, -2, 1, 0), 4.0);
  EXPECT_LT(SplitGain(2, 1, -2, 1, 100), SplitGain(2, 1, -2, 1, 0));
}

// With lambda = 0 the gain is nonnegative (Cauchy-Schwarz). With lambda > 0
// it can go negative, which is why splits need a strictly positive gain.
TEST(SplitGain, PropertyNonNegativeWithoutRegularizer) {
  Rng rng(7);
  for (int i = 0; i < 10000; ++i) {
    const double gl = StandardNormal(rng) * 10, gr = StandardNormal(rng) * 10;
    const double hl = UniformUnit(rng) * 5 + 1e-3, hr = UniformUnit(rng) * 5 + 1e-3;
    EXPECT_GE(SplitGain(gl, hl, gr, hr, 0.0), -1e-12 * (gl * gl + gr * gr) / (hl + hr));
  }
  EXPECT_LT(SplitGain(1, 1, 1, 1, 1.0), 0.0);
}

TEST(Goss, FullTopRateKeepsEverything) {
  std::vector<double> g(37);
  std::iota(g.begin(), g.end(), 0.0);
  const auto s = GossSample(g, 1.0, 0.5, 3);
  EXPECT_EQ(s.rows.size(), 37u);
  for (double m : s.multipliers) EXPECT_EQ(m, 1.0);
  EXPECT_TRUE(std::is_sorted(s.rows.begin(), s.rows.end()));
}

TEST(Goss, CountsAndMultipliers) {
  std::vector<double> g(100);
  Rng rng(1);
  for (double& v : g) v = UniformUnit(rng);
  const auto s = GossSample(g, 0.2, 0.1, 9);
  ASSERT_EQ(s.rows.size(), 30u);
  int top = 0, other = 0;
  auto sorted = g;
  std::sort(sorted.rbegin(), sorted.rend());
  for (std::size_t i = 0; i < s.rows.size(); ++i) {
    if (s.multipliers[i] == 1.0) {
      ++top;
      EXPECT_GE(g[s.rows[i]], sorted[19]);
    } else {
      ++other;
      EXPECT_DOUBLE_EQ(s.multipliers[i], 8.0);
      EXPECT_LT(g[s.rows[i]], sorted[19]);
    }
  }
  EXPECT_EQ(top, 20);
  EXPECT_EQ(other, 10);
  EXPECT_EQ(GossSample(g, 0.2, 0.1, 9).rows, s.rows);
}

TEST(Goss, RejectsBadRates) {
  const std::vector<double> g(10, 1.0);
  for (auto [a, b] : {std::pair{-0.1, 0.1}, {0.2, 0.0}, {0.6, 0.5}}) {
    try {
      GossSample(g, a, b, 0);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kBadRates);
    }
  }
}

TEST(Goss, WeightedGradientSumIsUnbiased) {
  // Monte Carlo against the exact sum: mean of 10^4 draws within 3 standard errors.
  Rng rng(5);
  std::vector<double> g(100);
  for (double& v : g) v = StandardNormal(rng);
  std::vector<double> mag(100);
  for (std::size_t i = 0; i < g.size(); ++i) mag[i] = std::abs(g[i]);
  const double exact = std::accumulate(g.begin(), g.end(), 0.0);
  const int draws = 10000;
  double sum = 0, sum_sq = 0;
  for (int t = 0; t < draws; ++t) {
    const auto s = GossSample(mag, 0.2, 0.1, DeriveSeed(77, {static_cast<std::uint64_t>(t)}));
    double est = 0;
    for (std::size_t i = 0; i < s.rows.size(); ++i) est += s.multipliers[i] * g[s.rows[i]];
    sum += est;
    sum_sq += est * est;
  }
  const double mean = sum / draws;
  const double se = std::sqrt((sum_sq / draws - mean * mean) / draws);
  EXPECT_LE(std::abs(mean - exact), 3 * se);
}

TEST(GrowTree, DepthZeroIsOneLeaf) {
  const auto d = data::MakeSynthetic(20, 2, Task::Binary(), 1.0, 1);
  const auto binned = BuildBins(d, 8);
  std::vector<GradientPair> grads(20);
  double G = 0, H = 0;
  for (int i = 0; i < 20; ++i) {
    grads[i] = {0.1 * i - 1.0, 0.25};
    G += grads[i].g;
    H += grads[i].h;
  }
  HyperParams hp;
  hp.max_depth = 0;
  hp.lambda = 2.0;
  hp.learning_rate = 0.3;
  Rng rng(0);
  const Tree t = GrowTree(binned, grads, AllRows(20), hp, rng);
  ASSERT_EQ(t.nodes().size(), 1u);
  EXPECT_NEAR(t.nodes()[0].value, -G / (H + 2.0) * 0.3, 1e-15);
}

TEST(GrowTree, ZeroGradientsGiveZeroLeaf) {
  const auto d = data::MakeSynthetic(30, 3, Task::Binary(), 1.0, 2);
  const auto binned = BuildBins(d, 8);
  std::vector<GradientPair> grads(30, GradientPair{0.0, 0.25});
  HyperParams hp;
  hp.max_depth = 4;
  Rng rng(0);
  const Tree t = GrowTree(binned, grads, AllRows(30), hp, rng);
  ASSERT_EQ(t.nodes().size(), 1u);
  EXPECT_EQ(t.nodes()[0].value, 0.0);
  EXPECT_FALSE(std::signbit(t.nodes()[0].value));
}

TEST(GrowTree, MatchesExhaustiveOracle) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto inst = testing::RandomOracleInstance(seed);
    std::vector<std::uint32_t> features(inst.binned.num_features());
    std::iota(features.begin(), features.end(), 0u);
    const RowSample all = AllRows(inst.binned.num_rows);
    const Tree tree = GrowTree(inst.binned, inst.grads, all, inst.hp, features);
    const auto oracle =
        testing::OracleGrow(inst.binned, inst.grads, all.rows, inst.hp, features, 0);
    EXPECT_TRUE(testing::SameTree(tree, 0, *oracle)) << "seed " << seed;
    EXPECT_LE(tree.depth(), inst.hp.max_depth);
  }
}

TEST(Histogram, ParentEqualsSumOfChildren) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = testing::RandomOracleInstance(seed + 1000);
    std::vector<std::uint32_t> features(inst.binned.num_features());
    std::iota(features.begin(), features.end(), 0u);
    const auto rows = AllRows(inst.binned.num_rows).rows;
    std::vector<std::uint32_t> left, right;
    for (auto r : rows) (inst.binned.bin_index[0][r] == 0 ? left : right).push_back(r);
    Histogram parent(inst.binned), l(inst.binned), r(inst.binned), diff(inst.binned);
    parent.Build(inst.binned, inst.grads, rows, features);
    l.Build(inst.binned, inst.grads, left, features);
    r.Build(inst.binned, inst.grads, right, features);
    diff.SetDifference(parent, l, features);
    for (std::size_t i = 0; i < parent.raw().size(); ++i) {
      EXPECT_EQ(parent.raw()[i].g, l.raw()[i].g + r.raw()[i].g);
      EXPECT_EQ(parent.raw()[i].h, l.raw()[i].h + r.raw()[i].h);
      EXPECT_EQ(diff.raw()[i].g, r.raw()[i].g);
    }
  }
}

TEST(SampleFeatures, SizeAndOrder) {
  Rng rng(3);
  const auto f = SampleFeatures(10, 0.35, rng);
  EXPECT_EQ(f.size(), 4u);
  EXPECT_TRUE(std::is_sorted(f.begin(), f.end()));
  EXPECT_EQ(SampleFeatures(10, 1.0, rng).size(), 10u);
  EXPECT_EQ(SampleFeatures(10, 0.01, rng).size(), 1u);
}

HyperParams Params(int iterations, int depth, double lr) {
  HyperParams hp;
  hp.iterations = iterations;
  hp.max_depth = depth;
  hp.learning_rate = lr;
  hp.lambda = 1.0;
  return hp;
}

double Auc(const data::LabeledDataset& d, const Ensemble& e) {
  return metrics::Evaluate(metrics::Metric::kAuc, d, e.PredictProba(d)).value;
}

TEST(Train, ZeroIterationsPredictsPrior) {
  const auto d = Column({0, 1, 2, 3, 4, 5, 6, 7}, {0, 0, 1, 1, 0, 1, 0, 1});
  const auto result = Train(d, Params(0, 3, 0.1));
  const auto p = result.ensemble.PredictProba(d);
  for (std::size_t i = 0; i < d.num_rows(); ++i) EXPECT_NEAR(p[2 * i + 1], 0.5, 1e-15);
  EXPECT_EQ(result.ensemble.num_iterations(), 0u);
}

TEST(Train, SeparatesTwoPoints) {
  const auto d = Column({0, 1}, {0, 1});
  auto hp = Params(200, 1, 0.3);
  hp.lambda = 0.0;
  const auto result = Train(d, hp);
  EXPECT_EQ(Auc(d, result.ensemble), 1.0);
  EXPECT_EQ(result.ensemble.num_iterations(), 200u);
}

TEST(Train, SyntheticSeparableReachesHighAuc) {
  const auto d = data::MakeSynthetic(2000, 10, Task::Binary(), 4.0, 3);
  const auto split = data::StratifiedSplit(d, 0.25, 1);
  const auto result = Train(split.train, Params(50, 4, 0.1));
  EXPECT_GE(Auc(split.holdout, result.ensemble), 0.99);
}

TEST(Train, GossWithFullTopRateEqualsGbdt) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto d = data::MakeSynthetic(300, 4, Task::Binary(), 1.0, seed);
    auto hp = Params(8, 3, 0.2);
    hp.seed = seed;
    hp.feature_fraction = 0.6;
    const auto gbdt = Train(d, hp).ensemble.Serialize();
    hp.boosting = Boosting::Goss(1.0, 0.1);
    EXPECT_EQ(Train(d, hp).ensemble.Serialize(), gbdt);
  }
}

TEST(Train, GossDiffersFromGbdtWhenSampling) {
  const auto d = data::MakeSynthetic(300, 4, Task::Binary(), 1.0, 1);
  auto hp = Params(5, 3, 0.2);
  const auto gbdt = Train(d, hp).ensemble;
  hp.boosting = Boosting::Goss();
  const auto goss = Train(d, hp).ensemble;
  EXPECT_NE(goss.Serialize(), gbdt.Serialize());
  EXPECT_GT(Auc(d, goss), 0.6);
}

TEST(Train, DeterministicSerialization) {
  const auto d = data::MakeSynthetic(400, 5, Task::Multiclass(3), 1.5, 8);
  auto hp = Params(6, 3, 0.3);
  hp.objective = Objective::MulticlassSoftmax(3);
  hp.feature_fraction = 0.5;
  hp.boosting = Boosting::Goss();
  hp.seed = 99;
  EXPECT_EQ(Train(d, hp).ensemble.Serialize(), Train(d, hp).ensemble.Serialize());
  hp.seed = 100;
  const auto other = Train(d, hp).ensemble.Serialize();
  hp.seed = 99;
  EXPECT_NE(Train(d, hp).ensemble.Serialize(), other);
}

TEST(Train, ObjectiveMismatch) {
  const auto d = data::MakeSynthetic(50, 2, Task::Multiclass(3), 1.0, 1);
  try {
    Train(d, Params(1, 1, 0.1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kObjectiveMismatch);
  }
  auto hp = Params(1, 1, 0.1);
  hp.objective = Objective::MulticlassSoftmax(4);
  EXPECT_THROW(Train(d, hp), Error);
}

TEST(Train, TrainingLossNonIncreasing) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    for (auto objective : {Objective::BinaryLogistic(), Objective::MulticlassSoftmax(4),
                           Objective::OneVsAll(4)}) {
      const Task task = objective.kind == Objective::Kind::kBinaryLogistic
                            ? Task::Binary()
                            : Task::Multiclass(4);
      const auto d = data::MakeSynthetic(500, 5, task, 1.0, seed);
      auto hp = Params(30, 3, 0.3);
      hp.objective = objective;
      hp.seed = seed;
      const auto result = Train(d, hp, {.record_train_loss = true});
      ASSERT_EQ(result.train_loss_log.size(), 30u);
      for (std::size_t i = 1; i < result.train_loss_log.size(); ++i) {
        EXPECT_LE(result.train_loss_log[i], result.train_loss_log[i - 1] + 1e-12)
            << objective.Name() << " seed " << seed << " iter " << i;
      }
    }
  }
}

TEST(Train, EveryInternalNodeHasPositiveGain) {
  const auto d = data::MakeSynthetic(800, 6, Task::Binary(), 1.0, 4);
  auto hp = Params(20, 5, 0.3);
  hp.lambda = 0.0;
  const auto e = Train(d, hp).ensemble;
  for (const auto& tree : e.trees()[0]) {
    EXPECT_LE(tree.depth(), 5);
    for (const auto& node : tree.nodes()) {
      if (!node.is_leaf()) EXPECT_GT(node.gain, 0.0);
    }
  }
}

TEST(Train, EvalLogHasOneEntryPerIteration) {
  const auto d = data::MakeSynthetic(600, 4, Task::Binary(), 2.0, 5);
  const auto split = data::StratifiedSplit(d, 0.25, 1);
  EvalSet eval{&split.holdout, [](const data::LabeledDataset& data, std::span<const double> p) {
                 return metrics::Evaluate(metrics::Metric::kAuc, data, p).value;
               }};
  const auto result = Train(split.train, Params(12, 3, 0.2), {.eval = eval});
  ASSERT_EQ(result.eval_log.size(), 12u);
  EXPECT_DOUBLE_EQ(result.eval_log.back(), Auc(split.holdout, result.ensemble));
}

TEST(Predict, ProbabilityMatchesIndependentTreeWalk) {
  const auto d = data::MakeSynthetic(300, 4, Task::Binary(), 1.5, 6);
  const auto e = Train(d, Params(15, 3, 0.2)).ensemble;
  const auto rows = d.DenseRows();
  const auto p = e.PredictProba(d);
  const auto p_raw = e.PredictProba(rows);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    // Walk each stored tree by bin comparison on freshly binned values.
    double margin = e.base_margins()[0];
    for (const auto& tree : e.trees()[0]) {
      std::int32_t id = 0;
      while (!tree.nodes()[id].is_leaf()) {
        const auto& node = tree.nodes()[id];
        const BinId bin = BinOf(e.boundaries()[node.feature], rows[i][node.feature]);
        id = bin <= node.bin ? node.left : node.right;
      }
      margin += tree.nodes()[id].value;
    }
    EXPECT_NEAR(p[2 * i + 1], 1.0 / (1.0 + std::exp(-margin)), 1e-12);
    EXPECT_NEAR(p_raw[2 * i + 1], p[2 * i + 1], 1e-12);
  }
}

TEST(Predict, MulticlassRowsSumToOne) {
  for (auto objective : {Objective::MulticlassSoftmax(5), Objective::OneVsAll(5)}) {
    const auto d = data::MakeSynthetic(400, 4, Task::Multiclass(5), 1.0, 7);
    auto hp = Params(10, 3, 0.3);
    hp.objective = objective;
    const auto p = Train(d, hp).ensemble.PredictProba(d);
    for (std::size_t i = 0; i < d.num_rows(); ++i) {
      double s = 0;
      for (int k = 0; k < 5; ++k) s += p[i * 5 + k];
      EXPECT_NEAR(s, 1.0, 1e-9);
    }
  }
}

TEST(Predict, ShortRowsReadMissingFeaturesAsZero) {
  const auto d = data::MakeSynthetic(200, 3, Task::Binary(), 1.5, 8);
  const auto e = Train(d, Params(5, 2, 0.3)).ensemble;
  const std::vector<std::vector<double>> short_rows{{0.7}};
  const std::vector<std::vector<double>> full_rows{{0.7, 0.0, 0.0}};
  EXPECT_EQ(e.PredictProba(short_rows), e.PredictProba(full_rows));
  const std::vector<std::vector<double>> bad{{std::nan(""), 0.0}};
  try {
    e.PredictProba(bad);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::kNonFiniteFeature);
  }
}

TEST(Ensemble, JsonRoundTrip) {
  const auto d = data::MakeSynthetic(300, 4, Task::Multiclass(3), 1.0, 9);
  auto hp = Params(4, 3, 0.3);
  hp.objective = Objective::OneVsAll(3);
  const auto e = Train(d, hp).ensemble;
  const auto back = Ensemble::FromJson(nlohmann::json::parse(e.Serialize()));
  EXPECT_EQ(back, e);
  EXPECT_EQ(back.Serialize(), e.Serialize());
  auto doc = e.ToJson();
  doc["version"] = 99;
  EXPECT_THROW(Ensemble::FromJson(doc), Error);
}

}  // namespace
}  // namespace boosthpo::gbdt
