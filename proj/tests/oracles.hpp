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

// Test-only reference implementations. These deliberately avoid the
// library's fast paths (histograms, rank sums, sort-based quantiles) so they
// can act as independent oracles.

#ifndef BOOSTHPO_TESTS_ORACLES_HPP_
#define BOOSTHPO_TESTS_ORACLES_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "boosthpo/dataset.hpp"
#include "boosthpo/gbdt/binning.hpp"
#include "boosthpo/gbdt/hyperparams.hpp"
#include "boosthpo/gbdt/tree.hpp"
#include "boosthpo/random.hpp"

namespace boosthpo::testing {

// Exhaustive split enumeration: at every node, every (feature, bin) split is
// scored by summing the rows on each side directly.
struct OracleNode {
  bool leaf = true;
  double value = 0.0;
  std::uint32_t feature = 0;
  int bin = 0;
  double gain = 0.0;
  std::unique_ptr<OracleNode> left;
  std::unique_ptr<OracleNode> right;
};

inline std::unique_ptr<OracleNode> OracleGrow(const gbdt::BinnedMatrix& binned,
                                              std::span<const gbdt::GradientPair> grads,
                                              const std::vector<std::uint32_t>& rows,
                                              const gbdt::HyperParams& hp,
                                              std::span<const std::uint32_t> features,
                                              int depth) {
  auto node = std::make_unique<OracleNode>();
  double g = 0.0, h = 0.0;
  for (auto r : rows) {
    g += grads[r].g;
    h += grads[r].h;
  }
  double best = 0.0;
  bool found = false;
  std::uint32_t best_f = 0;
  int best_t = 0;
  if (depth < hp.max_depth && rows.size() >= 2) {
    for (std::uint32_t f : features) {
      for (int t = 0; t + 1 < binned.num_bins_used(f); ++t) {
        double gl = 0, hl = 0, gr = 0, hr = 0;
        for (auto r : rows) {
          if (binned.bin_index[f][r] <= t) {
            gl += grads[r].g;
            hl += grads[r].h;
          } else {
            gr += grads[r].g;
            hr += grads[r].h;
          }
        }
        if (hl < hp.min_child_hessian || hr < hp.min_child_hessian) continue;
        const double gain =
            0.5 * (gl * gl / (hl + hp.lambda) + gr * gr / (hr + hp.lambda) -
                   (gl + gr) * (gl + gr) / (hl + hr + hp.lambda));
        if (gain > best) {
          best = gain;
          found = true;
          best_f = f;
          best_t = t;
        }
      }
    }
  }
  if (!found) {
    node->value = (h + hp.lambda) > 0 ? -g / (h + hp.lambda) * hp.learning_rate + 0.0 : 0.0;
    return node;
  }
  node->leaf = false;
  node->feature = best_f;
  node->bin = best_t;
  node->gain = best;
  std::vector<std::uint32_t> l, r;
  for (auto row : rows) (binned.bin_index[best_f][row] <= best_t ? l : r).push_back(row);
  node->left = OracleGrow(binned, grads, l, hp, features, depth + 1);
  node->right = OracleGrow(binned, grads, r, hp, features, depth + 1);
  return node;
}

// Exact structural and value equality.
inline bool SameTree(const gbdt::Tree& tree, std::int32_t id, const OracleNode& oracle) {
  const auto& node = tree.nodes()[id];
  if (node.is_leaf() != oracle.leaf) return false;
  if (node.is_leaf()) return node.value == oracle.value;
  return static_cast<std::uint32_t>(node.feature) == oracle.feature && node.bin == oracle.bin &&
         node.gain == oracle.gain && SameTree(tree, node.left, *oracle.left) &&
         SameTree(tree, node.right, *oracle.right);
}

// O(n^2) pair counting.
inline double PairCountingAuc(std::span<const int> labels, std::span<const double> scores) {
  double wins = 0.0, pairs = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 1) continue;
    for (std::size_t j = 0; j < labels.size(); ++j) {
      if (labels[j] != 0) continue;
      pairs += 1.0;
      if (scores[i] > scores[j]) wins += 1.0;
      else if (scores[i] == scores[j]) wins += 0.5;
    }
  }
  return wins / pairs;
}

// Direct DCG evaluation for a single query: selection of the top items by
// repeated argmax (first index wins ties) instead of sorting.
inline double BruteForceNdcg10(std::vector<int> rel, std::vector<double> pred) {
  auto dcg_by = [&](auto key) {
    std::vector<bool> used(rel.size(), false);
    double dcg = 0.0;
    for (std::size_t rank = 1; rank <= std::min<std::size_t>(10, rel.size()); ++rank) {
      std::size_t pick = rel.size();
      for (std::size_t i = 0; i < rel.size(); ++i) {
        if (used[i]) continue;
        if (pick == rel.size() || key(i) > key(pick)) pick = i;
      }
      used[pick] = true;
      dcg += (std::pow(2.0, rel[pick]) - 1.0) / (std::log(rank + 1.0) / std::log(2.0));
    }
    return dcg;
  };
  const double actual = dcg_by([&](std::size_t i) { return pred[i]; });
  const double ideal = dcg_by([&](std::size_t i) { return static_cast<double>(rel[i]); });
  return ideal > 0 ? actual / ideal : 0.0;
}

// Closed-form Matern 5/2 evaluated in long double.
inline long double MaternOracle(long double r, long double signal_variance) {
  const long double s = std::sqrt(5.0L) * r;
  return signal_variance * (1.0L + s + s * s / 3.0L) * std::exp(-s);
}

struct MonteCarloEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
};

// E[max(f - best - xi, 0)] for f ~ N(mu, sigma^2) by plain sampling.
inline MonteCarloEstimate MonteCarloEi(double mu, double sigma, double best, double xi,
                                       std::size_t samples, Rng& rng) {
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double f = mu + sigma * StandardNormal(rng);
    const double v = std::max(f - best - xi, 0.0);
    sum += v;
    sum_sq += v * v;
  }
  const double n = static_cast<double>(samples);
  const double mean = sum / n;
  const double var = std::max(sum_sq / n - mean * mean, 0.0);
  return {mean, std::sqrt(var / n)};
}

// Exact mean and variance of max(f - best - xi, 0) for f ~ N(mu, sigma^2),
// from the truncated-normal moments in long double.
struct ImprovementMoments {
  long double mean;
  long double variance;
};

inline ImprovementMoments ExactImprovementMoments(double mu, double sigma, double best,
                                                  double xi) {
  const long double s = sigma;
  const long double m = static_cast<long double>(mu) - best - xi;
  const long double u = m / s;
  const long double cdf = 0.5L * std::erfc(-u / std::sqrt(2.0L));
  const long double pdf = std::exp(-0.5L * u * u) / std::sqrt(2.0L * 3.14159265358979323846264L);
  const long double first = m * cdf + s * pdf;
  const long double second = (m * m + s * s) * cdf + m * s * pdf;
  return {first, std::max(second - first * first, 0.0L)};
}

// Gradients are small dyadic rationals so that every partial sum is exact
// and the comparison with the oracle can be bitwise.
struct OracleInstance {
  gbdt::BinnedMatrix binned;
  std::vector<gbdt::GradientPair> grads;
  gbdt::HyperParams hp;
};

inline OracleInstance RandomOracleInstance(std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t n = 2 + UniformIndex(rng, 63);
  const std::size_t m = 1 + UniformIndex(rng, 4);
  const int bins = 2 + static_cast<int>(UniformIndex(rng, 7));
  data::DatasetBuilder b(data::Task::Binary());
  std::vector<double> row(m);
  for (std::size_t i = 0; i < n; ++i) {
    for (double& v : row) v = std::floor(UniformUnit(rng) * 12.0);
    b.AddDenseRow(static_cast<int>(i % 2), row);
  }
  OracleInstance inst;
  inst.binned = gbdt::BuildBins(std::move(b).Build(m), bins);
  inst.grads.resize(n);
  for (auto& gp : inst.grads) {
    gp.g = (static_cast<double>(UniformIndex(rng, 129)) - 64.0) / 64.0;
    gp.h = static_cast<double>(1 + UniformIndex(rng, 64)) / 64.0;
  }
  inst.hp.max_depth = static_cast<int>(UniformIndex(rng, 3));
  inst.hp.lambda = std::array<double, 3>{0.0, 0.5, 1.0}[UniformIndex(rng, 3)];
  inst.hp.learning_rate = 0.25;
  return inst;
}

}  // namespace boosthpo::testing

#endif  // BOOSTHPO_TESTS_ORACLES_HPP_
