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
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

#include <Eigen/Cholesky>

#include "boosthpo/bayesopt/acquisition.hpp"
#include "boosthpo/bayesopt/gaussian_process.hpp"
#include "boosthpo/bayesopt/optimizer.hpp"
#include "boosthpo/bayesopt/param_space.hpp"
#include "boosthpo/bayesopt/trial_log.hpp"
#include "boosthpo/error.hpp"
#include "boosthpo/random.hpp"
#include "oracles.hpp"

namespace boosthpo::bo {
namespace {

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

ParamSpace MixedSpace() {
  return ParamSpace({Dimension::Integer("iterations", 16, 1000),
                     Dimension::Integer("max_depth", 2, 14),
                     Dimension::Continuous("lambda", 1e-2, 1e5, Scale::kLog10),
                     Dimension::Continuous("learning_rate", 0.01, 1.0),
                     Dimension::Categorical("boosting", {"gbdt", "goss"})});
}

std::vector<std::vector<double>> RandomDesign(Rng& rng, std::size_t n, std::size_t dim) {
  std::vector<std::vector<double>> x(n, std::vector<double>(dim));
  for (auto& row : x) {
    for (double& v : row) v = UniformUnit(rng);
  }
  return x;
}

TEST(ParamSpace, LogEncodingExamples) {
  const ParamSpace space({Dimension::Continuous("lambda", 1e-2, 1e5, Scale::kLog10)});
  EXPECT_DOUBLE_EQ(space.Encode({1e-2})[0], 0.0);
  EXPECT_DOUBLE_EQ(space.Encode({1e5})[0], 1.0);
  EXPECT_NEAR(space.Encode({std::pow(10.0, 1.5)})[0], 0.5, 1e-12);
}

TEST(ParamSpace, CategoricalOneHot) {
  const ParamSpace space({Dimension::Categorical("boosting", {"gbdt", "goss"})});
  EXPECT_EQ(space.Encode({std::string("gbdt")}), (std::vector<double>{1.0, 0.0}));
  EXPECT_EQ(std::get<std::string>(space.Decode({0.2, 0.7})[0]), "goss");
  EXPECT_EQ(std::get<std::string>(space.Decode({0.5, 0.5})[0]), "gbdt");
}

TEST(ParamSpace, RoundTripProperty) {
  const ParamSpace space = MixedSpace();
  EXPECT_EQ(space.encoded_size(), 6u);
  Rng rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const Assignment a{
        static_cast<std::int64_t>(16 + UniformIndex(rng, 985)),
        static_cast<std::int64_t>(2 + UniformIndex(rng, 13)),
        std::pow(10.0, -2.0 + 7.0 * UniformUnit(rng)),
        0.01 + 0.99 * UniformUnit(rng),
        std::string(UniformUnit(rng) < 0.5 ? "gbdt" : "goss")};
    const std::vector<double> e = space.Encode(a);
    for (double v : e) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
    const Assignment back = space.Decode(e);
    EXPECT_EQ(back[0], a[0]);
    EXPECT_EQ(back[1], a[1]);
    EXPECT_NEAR(std::get<double>(back[2]), std::get<double>(a[2]),
                1e-9 * std::get<double>(a[2]));
    EXPECT_NEAR(std::get<double>(back[3]), std::get<double>(a[3]), 1e-12);
    EXPECT_EQ(back[4], a[4]);
  }
}

TEST(ParamSpace, DecodeAlwaysInRange) {
  const ParamSpace space = MixedSpace();
  Rng rng(4);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> e(space.encoded_size());
    for (double& v : e) v = 1.4 * UniformUnit(rng) - 0.2;
    EXPECT_TRUE(space.Contains(space.Decode(e)));
  }
}

TEST(ParamSpace, Errors) {
  const ParamSpace space = MixedSpace();
  EXPECT_EQ(CodeOf([&] {
              space.Encode({std::int64_t{2000}, std::int64_t{4}, 1.0, 0.1, std::string("gbdt")});
            }),
            ErrorCode::kOutOfRange);
  EXPECT_EQ(CodeOf([&] {
              space.Encode({std::int64_t{20}, std::int64_t{4}, 1.0, 0.1, std::string("dart")});
            }),
            ErrorCode::kOutOfRange);
  EXPECT_EQ(CodeOf([] { ParamSpace({Dimension::Continuous("a", 1.0, 1.0)}); }),
            ErrorCode::kConfig);
  EXPECT_EQ(CodeOf([] { ParamSpace({Dimension::Continuous("a", 0.0, 1.0, Scale::kLog10)}); }),
            ErrorCode::kConfig);
  EXPECT_EQ(CodeOf([] { ParamSpace({Dimension::Categorical("a", {"x"})}); }),
            ErrorCode::kConfig);
}

TEST(ParamSpace, JsonRoundTrip) {
  const ParamSpace space = MixedSpace();
  const ParamSpace back = ParamSpace::FromJson(space.ToJson());
  EXPECT_EQ(back.ToJson(), space.ToJson());
  const Assignment a{std::int64_t{100}, std::int64_t{6}, 1.0, 0.1, std::string("goss")};
  EXPECT_EQ(AssignmentFromJson(space, AssignmentToJson(space, a)), a);
}

TEST(Matern, SpotValueAndShape) {
  EXPECT_NEAR(Matern52({0.0}, {1.0}, {1.0}, 1.0), 0.5240, 1e-4);
  EXPECT_NEAR(Matern52({0.0}, {1.0}, {1.0}, 1.0),
              static_cast<double>(testing::MaternOracle(1.0L, 1.0L)), 1e-15);
  EXPECT_EQ(Matern52({0.3, 0.4}, {0.3, 0.4}, {0.2, 0.7}, 2.5), 2.5);
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::vector<double> a{UniformUnit(rng), UniformUnit(rng)};
    const std::vector<double> b{UniformUnit(rng), UniformUnit(rng)};
    const std::vector<double> ls{0.1 + UniformUnit(rng), 0.1 + UniformUnit(rng)};
    EXPECT_EQ(Matern52(a, b, ls, 1.3), Matern52(b, a, ls, 1.3));
  }
  double prev = Matern52FromDistance(0.0, 1.0);
  for (int i = 1; i <= 1000; ++i) {
    const double k = Matern52FromDistance(i * 0.01, 1.0);
    EXPECT_LT(k, prev);
    prev = k;
  }
}

GpFitOptions FloorOnly() {
  GpFitOptions o;
  o.fit_noise = false;
  return o;
}

TEST(GaussianProcess, TwoPointInterpolation) {
  const GaussianProcess gp = GaussianProcess::Fit({{0.2}, {0.7}}, {1.0, 3.0}, FloorOnly());
  const auto& y = gp.standardized_targets();
  EXPECT_NEAR(gp.StandardizedPosterior({0.2}).mean, y(0), 1e-6);
  EXPECT_NEAR(gp.StandardizedPosterior({0.7}).mean, y(1), 1e-6);
  EXPECT_NEAR(gp.Predict({0.2}).mean, 1.0, 1e-6);
  EXPECT_NEAR(gp.Predict({0.7}).mean, 3.0, 1e-6);
  EXPECT_LE(gp.Predict({0.7}).variance,
            1e-6 * gp.params().signal_variance * gp.target_std() * gp.target_std());
}

TEST(GaussianProcess, InterpolatesRandomDesigns) {
  Rng rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t dim = 1 + UniformIndex(rng, 3);
    const std::size_t n = 2 + UniformIndex(rng, 14);
    const auto x = RandomDesign(rng, n, dim);
    std::vector<double> y(n);
    for (double& v : y) v = StandardNormal(rng);
    const GaussianProcess gp = GaussianProcess::Fit(x, y, FloorOnly());
    for (std::size_t i = 0; i < n; ++i) {
      const double target = (y[i] - gp.target_mean()) / gp.target_std();
      EXPECT_NEAR(gp.StandardizedPosterior(x[i]).mean, target, 1e-6) << trial;
    }
  }
}

TEST(GaussianProcess, FactorReproducesGram) {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = RandomDesign(rng, 20, 3);
    std::vector<double> y(20);
    for (double& v : y) v = UniformUnit(rng);
    const GaussianProcess gp = GaussianProcess::Fit(x, y);
    const Eigen::MatrixXd l = gp.cholesky_factor();
    const Eigen::MatrixXd k = gp.gram();
    EXPECT_LT((l * l.transpose() - k).norm(), 1e-8 * k.norm());
    EXPECT_TRUE(k.isApprox(k.transpose(), 0.0));
    EXPECT_GE(gp.params().noise_variance, kDefaultNoiseFloor);
  }
}

TEST(GaussianProcess, OrderInvariance) {
  Rng rng(8);
  const auto x = RandomDesign(rng, 15, 2);
  std::vector<double> y(15);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = std::sin(6 * x[i][0]) + x[i][1];
  const GaussianProcess a = GaussianProcess::Fit(x, y);
  std::vector<std::size_t> perm(15);
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  Shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::vector<double>> px;
  std::vector<double> py;
  for (std::size_t i : perm) {
    px.push_back(x[i]);
    py.push_back(y[i]);
  }
  const GaussianProcess b = GaussianProcess::Fit(px, py);
  EXPECT_EQ(a.params().lengthscales, b.params().lengthscales);
  EXPECT_EQ(a.params().signal_variance, b.params().signal_variance);
  EXPECT_EQ(a.params().noise_variance, b.params().noise_variance);
}

TEST(GaussianProcess, RecoversLengthscale) {
  std::vector<double> recovered;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(100 + seed);
    const std::size_t n = 40;
    std::vector<std::vector<double>> x(n, std::vector<double>(1));
    for (auto& row : x) row[0] = UniformUnit(rng);
    Eigen::MatrixXd k(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        k(i, j) = static_cast<double>(
            testing::MaternOracle(std::abs(x[i][0] - x[j][0]) / 0.3L, 1.0L));
      }
      k(i, i) += 1e-8;
    }
    const Eigen::MatrixXd l = Eigen::LLT<Eigen::MatrixXd>(k).matrixL();
    Eigen::VectorXd z(n);
    for (std::size_t i = 0; i < n; ++i) z(i) = StandardNormal(rng);
    const Eigen::VectorXd f = l * z;
    const GaussianProcess gp =
        GaussianProcess::Fit(x, std::vector<double>(f.data(), f.data() + n));
    // Standardization rescales the inputs' kernel amplitude, never lengths.
    recovered.push_back(gp.params().lengthscales[0]);
  }
  std::sort(recovered.begin(), recovered.end());
  const double median = 0.5 * (recovered[4] + recovered[5]);
  EXPECT_GT(median, 0.15);
  EXPECT_LT(median, 0.6);
}

TEST(GaussianProcess, RevertsToPriorFarAway) {
  GpFitOptions o;
  o.fixed = KernelParams{{0.01}, 1.5, kDefaultNoiseFloor};
  const GaussianProcess gp = GaussianProcess::Fit({{0.0}, {0.05}, {0.1}}, {1.0, 2.0, 4.0}, o);
  const Posterior p = gp.Predict({1.0});
  EXPECT_NEAR(p.mean, gp.target_mean(), 1e-9);
  EXPECT_NEAR(p.variance, 1.5 * gp.target_std() * gp.target_std(), 1e-9);
}

TEST(GaussianProcess, VarianceBoundedByPrior) {
  Rng rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = RandomDesign(rng, 12, 2);
    std::vector<double> y(12);
    for (double& v : y) v = StandardNormal(rng);
    const GaussianProcess gp = GaussianProcess::Fit(x, y);
    for (int q = 0; q < 100; ++q) {
      const Posterior p = gp.StandardizedPosterior({UniformUnit(rng), UniformUnit(rng)});
      EXPECT_GE(p.variance, 0.0);
      EXPECT_LE(p.variance, gp.params().signal_variance + gp.params().noise_variance);
    }
  }
}

TEST(GaussianProcess, Errors) {
  EXPECT_EQ(CodeOf([] { GaussianProcess::Fit({{0.5}}, {1.0}); }), ErrorCode::kTooFewTrials);
  const GaussianProcess gp = GaussianProcess::Fit({{0.1}, {0.9}, {0.5}}, {2.0, 2.0, 2.0});
  EXPECT_TRUE(gp.degenerate());
  EXPECT_EQ(gp.params().lengthscales, std::vector<double>{0.5});
  EXPECT_NEAR(gp.Predict({0.3}).mean, 2.0, 1e-12);
}

TEST(ExpectedImprovement, Examples) {
  EXPECT_EQ(ExpectedImprovement(0.5, 0.0, 1.0, 0.0), 0.0);
  EXPECT_EQ(ExpectedImprovement(1.0, 0.0, 1.0, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(ExpectedImprovement(2.0, 0.0, 1.0, 0.25), 0.75);
  EXPECT_NEAR(ExpectedImprovement(1.0, 1.0, 1.0, 0.0), 0.39894, 1e-5);
}

TEST(ExpectedImprovement, MatchesMonteCarlo) {
  Rng rng(10);
  for (int trial = 0; trial < 20; ++trial) {
    const double mu = 4.0 * UniformUnit(rng) - 2.0;
    const double sigma = 0.05 + 2.0 * UniformUnit(rng);
    const double best = 4.0 * UniformUnit(rng) - 2.0;
    const double xi = 0.1 * UniformUnit(rng);
    const auto mc = testing::MonteCarloEi(mu, sigma, best, xi, 100000, rng);
    const auto exact = testing::ExactImprovementMoments(mu, sigma, best, xi);
    const double closed = ExpectedImprovement(mu, sigma * sigma, best, xi);
    EXPECT_LE(std::abs(closed - mc.mean),
              3.0 * static_cast<double>(std::sqrt(exact.variance / 100000.0L)));
    EXPECT_NEAR(closed, static_cast<double>(exact.mean), 1e-9 * static_cast<double>(exact.mean));
  }
}

TEST(ExpectedImprovement, NonNegativeAndMonotoneInSigma) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const double best = UniformUnit(rng);
    const double mu = best - 2.0 * UniformUnit(rng);
    const double xi = 0.05 * UniformUnit(rng);
    double prev = 0.0;
    for (int s = 0; s <= 50; ++s) {
      const double sigma = 0.05 * s;
      const double ei = ExpectedImprovement(mu, sigma * sigma, best, xi);
      EXPECT_GE(ei, 0.0);
      EXPECT_GE(ei, prev);
      prev = ei;
    }
    EXPECT_GE(ExpectedImprovement(10.0 * StandardNormal(rng), UniformUnit(rng), best, xi), 0.0);
  }
}

GaussianProcess OneDimensionalState() {
  GpFitOptions o;
  o.fixed = KernelParams{{0.4}, 1.0, 1e-6};
  return GaussianProcess::Fit({{0.0}, {0.3}, {1.0}}, {-1.0, 1.0, -0.5}, o);
}

TEST(SuggestNext, FindsSingleEiPeak) {
  const GaussianProcess gp = OneDimensionalState();
  const ParamSpace space({Dimension::Continuous("x", 0.0, 1.0)});
  const double best = gp.best_standardized();
  std::size_t arg = 0, peaks = 0;
  std::vector<double> ei(10000);
  for (std::size_t i = 0; i < ei.size(); ++i) {
    const Posterior p = gp.StandardizedPosterior({(i + 0.5) / 1e4});
    ei[i] = ExpectedImprovement(p.mean, p.variance, best, kDefaultXi);
    if (ei[i] > ei[arg]) arg = i;
  }
  // Ripples of relative size below 1e-3 next to the incumbent are ignored.
  for (std::size_t i = 1; i + 1 < ei.size(); ++i) {
    if (ei[i] > ei[i - 1] && ei[i] >= ei[i + 1] && ei[i] > 1e-3 * ei[arg]) ++peaks;
  }
  ASSERT_EQ(peaks, 1u);
  Rng rng(12);
  const Suggestion s = SuggestNext(gp, space, rng);
  EXPECT_NEAR(s.point[0], (arg + 0.5) / 1e4, 0.01);
  EXPECT_FALSE(s.variance_fallback);
}

TEST(SuggestNext, DeterministicAndInsideCube) {
  Rng data(13);
  const ParamSpace space = MixedSpace();
  const auto x = RandomDesign(data, 12, space.encoded_size());
  std::vector<double> y(12);
  for (double& v : y) v = UniformUnit(data);
  const GaussianProcess gp = GaussianProcess::Fit(x, y);
  Rng a(99), b(99);
  const Suggestion sa = SuggestNext(gp, space, a);
  const Suggestion sb = SuggestNext(gp, space, b);
  EXPECT_EQ(sa.point, sb.point);
  for (double v : sa.point) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
  EXPECT_TRUE(space.Contains(space.Decode(sa.point)));
}

TEST(SuggestNext, ZeroEiFallsBackToMaxVariance) {
  const GaussianProcess gp = OneDimensionalState();
  const ParamSpace space({Dimension::Continuous("x", 0.0, 1.0)});
  SuggestOptions o;
  o.xi = 1e6;
  Rng rng(14);
  Rng replay = rng;
  const Suggestion s = SuggestNext(gp, space, rng, o);
  EXPECT_TRUE(s.variance_fallback);
  const double shift = UniformUnit(replay);
  const double chosen = gp.StandardizedPosterior(s.point).variance;
  for (std::size_t i = 1; i <= o.num_candidates; ++i) {
    double c = Halton(i, 1)[0] + shift;
    if (c >= 1.0) c -= 1.0;
    EXPECT_GE(chosen, gp.StandardizedPosterior({c}).variance);
  }
}

TEST(SuggestNext, ArgmaxInvariantUnderAffineRescaling) {
  Rng data(15);
  const auto x = RandomDesign(data, 10, 2);
  std::vector<double> y(10), scaled(10);
  for (std::size_t i = 0; i < y.size(); ++i) {
    y[i] = -std::pow(x[i][0] - 0.4, 2) - std::pow(x[i][1] - 0.6, 2);
    scaled[i] = 3.7 * y[i] - 1.2;
  }
  const ParamSpace space({Dimension::Continuous("a", 0.0, 1.0),
                          Dimension::Continuous("b", 0.0, 1.0)});
  GpFitOptions o;
  o.fixed = KernelParams{{0.3, 0.3}, 1.0, 1e-6};
  Rng ra(16), rb(16);
  const Suggestion a = SuggestNext(GaussianProcess::Fit(x, y, o), space, ra);
  const Suggestion b = SuggestNext(GaussianProcess::Fit(x, scaled, o), space, rb);
  EXPECT_NEAR(a.point[0], b.point[0], 1e-9);
  EXPECT_NEAR(a.point[1], b.point[1], 1e-9);
  Rng fa(17), fb(17);
  const Suggestion c = SuggestNext(GaussianProcess::Fit(x, y), space, fa);
  const Suggestion d = SuggestNext(GaussianProcess::Fit(x, scaled), space, fb);
  EXPECT_NEAR(c.point[0], d.point[0], 1e-6);
  EXPECT_NEAR(c.point[1], d.point[1], 1e-6);
}

const std::vector<double> kOptimum{0.5, -0.7};

ParamSpace QuadraticSpace() {
  return ParamSpace({Dimension::Continuous("x0", -2.0, 2.0),
                     Dimension::Continuous("x1", -2.0, 2.0)});
}

TrialOutcome Quadratic(const Assignment& a) {
  const double d0 = std::get<double>(a[0]) - kOptimum[0];
  const double d1 = std::get<double>(a[1]) - kOptimum[1];
  return {-(d0 * d0 + d1 * d1), 0.001};
}

TEST(RunHpo, CountsOrderAndMonotoneBest) {
  const ParamSpace space = QuadraticSpace();
  std::size_t calls = 0;
  const auto records = RunHpo(
      space, [&](const Assignment& a) { ++calls; return Quadratic(a); }, 25, 8, 1);
  ASSERT_EQ(records.size(), 25u);
  EXPECT_EQ(calls, 25u);
  for (std::size_t i = 0; i < records.size(); ++i) {
    EXPECT_EQ(records[i].index, i);
    EXPECT_TRUE(space.Contains(records[i].params));
  }
  const auto best = BestSoFar(records);
  for (std::size_t i = 1; i < best.size(); ++i) EXPECT_GE(*best[i], *best[i - 1]);
}

TEST(RunHpo, DeterministicGivenSeed) {
  const ParamSpace space = MixedSpace();
  auto objective = [](const Assignment& a) {
    return TrialOutcome{-std::abs(std::get<double>(a[3]) - 0.3) -
                            0.01 * static_cast<double>(std::get<std::int64_t>(a[1])),
                        0.0};
  };
  const auto a = RunHpo(space, objective, 14, 6, 77);
  const auto b = RunHpo(space, objective, 14, 6, 77);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].params, b[i].params);
}

TEST(RunHpo, InitCountEqualToBudgetIsLatinHypercube) {
  const ParamSpace space = QuadraticSpace();
  const auto records = RunHpo(space, Quadratic, 10, 10, 3);
  for (std::size_t d = 0; d < 2; ++d) {
    std::set<int> strata;
    for (const auto& r : records) {
      const double u = (std::get<double>(r.params[d]) + 2.0) / 4.0;
      strata.insert(std::min(9, static_cast<int>(u * 10)));
    }
    EXPECT_EQ(strata.size(), 10u);
  }
}

TEST(RunHpo, FailedTrialsAreRecordedAndLoopContinues) {
  const ParamSpace space = QuadraticSpace();
  std::size_t calls = 0;
  const auto records = RunHpo(
      space,
      [&](const Assignment& a) {
        if (++calls % 3 == 0) throw std::runtime_error("out of memory");
        return Quadratic(a);
      },
      15, 4, 2);
  ASSERT_EQ(records.size(), 15u);
  std::size_t failed = 0;
  for (const auto& r : records) {
    if (r.status == TrialStatus::kFailed) {
      ++failed;
      EXPECT_FALSE(r.score.has_value());
      EXPECT_EQ(r.message, "out of memory");
    } else {
      EXPECT_TRUE(r.score.has_value());
    }
  }
  EXPECT_EQ(failed, 5u);
}

TEST(RunHpo, RejectsBadBudget) {
  EXPECT_EQ(CodeOf([] { RunHpo(QuadraticSpace(), Quadratic, 5, 1, 0); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { RunHpo(QuadraticSpace(), Quadratic, 5, 6, 0); }),
            ErrorCode::kInvalidArgument);
}

TEST(RunHpo, BeatsRandomSearchOnQuadratic) {
  std::vector<double> bo, rs;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto a = RunHpo(QuadraticSpace(), Quadratic, 40, kDefaultInitCount, seed);
    const auto b = RandomSearch(QuadraticSpace(), Quadratic, 40, seed);
    bo.push_back(*BestSoFar(a).back());
    rs.push_back(*BestSoFar(b).back());
    EXPECT_GT(bo.back(), -1e-2) << seed;
  }
  std::sort(bo.begin(), bo.end());
  std::sort(rs.begin(), rs.end());
  EXPECT_GT(bo[4] + bo[5], rs[4] + rs[5]);
}

TEST(TrialLog, CsvRoundTripAndCurve) {
  const ParamSpace space = MixedSpace();
  std::vector<TrialRecord> records;
  records.push_back({0, {std::int64_t{16}, std::int64_t{2}, 0.01, 0.5, std::string("gbdt")},
                     0.7, 1.5, TrialStatus::kOk, ""});
  records.push_back({1, {std::int64_t{17}, std::int64_t{3}, 1.0, 0.5, std::string("goss")},
                     std::nullopt, 0.5, TrialStatus::kFailed, "boom"});
  records.push_back({2, {std::int64_t{18}, std::int64_t{4}, 10.0, 0.25, std::string("goss")},
                     0.9, 2.0, TrialStatus::kOk, ""});
  std::ostringstream csv;
  csv << CsvHeader(ParamNames(space), "trial_index") << "\n";
  for (const auto& r : records) csv << CsvRow(space.size(), r) << "\n";
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')),
            "trial_index,iterations,max_depth,lambda,learning_rate,boosting,score,seconds,status");
  std::istringstream in(csv.str());
  const auto logged = ReadTrialCsv(in);
  ASSERT_EQ(logged.size(), 3u);
  EXPECT_FALSE(logged[1].score.has_value());
  const auto curve = ComputeCurve(logged);
  EXPECT_DOUBLE_EQ(curve[2].cumulative_seconds, 4.0);
  EXPECT_EQ(*curve[1].best_score_so_far, 0.7);
  EXPECT_EQ(*curve[2].best_score_so_far, 0.9);
  const auto line = nlohmann::json::parse(JsonLine(ParamNames(space), records[1], "trial_index"));
  EXPECT_TRUE(line["score"].is_null());
  EXPECT_EQ(line["params"]["boosting"], "goss");
}

TEST(TrialLog, CurveExamples) {
  const auto single = ComputeCurve({{0, 0.8, 3.0, TrialStatus::kOk}});
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0].cumulative_seconds, 3.0);
  EXPECT_EQ(*single[0].best_score_so_far, 0.8);
  EXPECT_EQ(CodeOf([] { ComputeCurve({}); }), ErrorCode::kNoRecords);

  Rng rng(18);
  std::vector<LoggedTrial> log;
  for (std::size_t i = 0; i < 50; ++i) {
    log.push_back({i, UniformUnit(rng), UniformUnit(rng), TrialStatus::kOk});
  }
  const auto curve = ComputeCurve(log);
  for (std::size_t i = 1; i < curve.size(); ++i) {
    EXPECT_GE(*curve[i].best_score_so_far, *curve[i - 1].best_score_so_far);
    EXPECT_GT(curve[i].cumulative_seconds, curve[i - 1].cumulative_seconds);
  }
  auto shuffled = log;
  Shuffle(shuffled.begin(), shuffled.end(), rng);
  std::sort(shuffled.begin(), shuffled.end(),
            [](const LoggedTrial& a, const LoggedTrial& b) { return a.index < b.index; });
  const auto again = ComputeCurve(shuffled);
  for (std::size_t i = 0; i < curve.size(); ++i) {
    EXPECT_EQ(again[i].cumulative_seconds, curve[i].cumulative_seconds);
    EXPECT_EQ(again[i].best_score_so_far, curve[i].best_score_so_far);
  }
}

}  // namespace
}  // namespace boosthpo::bo
