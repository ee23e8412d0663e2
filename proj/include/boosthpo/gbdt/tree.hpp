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

#ifndef BOOSTHPO_GBDT_TREE_HPP_
#define BOOSTHPO_GBDT_TREE_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "boosthpo/gbdt/binning.hpp"
#include "boosthpo/gbdt/goss.hpp"
#include "boosthpo/gbdt/hyperparams.hpp"
#include "boosthpo/gbdt/objective.hpp"
#include "boosthpo/random.hpp"

namespace boosthpo::gbdt {

// Rows with bin <= `bin` on `feature` (equivalently raw value < threshold)
// go left. Leaves have feature == -1.
struct TreeNode {
  std::int32_t feature = -1;
  BinId bin = 0;
  double threshold = 0.0;
  std::int32_t left = -1;
  std::int32_t right = -1;
  double value = 0.0;
  double gain = 0.0;

  bool is_leaf() const { return feature < 0; }
  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

class Tree {
 public:
  Tree() : nodes_(1) {}
  explicit Tree(std::vector<TreeNode> nodes);

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  std::size_t num_leaves() const;
  int depth() const;

  double PredictBinned(const BinnedMatrix& binned, std::size_t row) const;
  // Raw feature row; features beyond row.size() read as 0.
  double PredictRaw(std::span<const double> row) const;

  // Throws BadModel when the node array is not a binary tree rooted at 0
  // or references features/bins outside the given limits.
  void CheckWellFormed(std::span<const std::vector<double>> boundaries) const;

  friend bool operator==(const Tree&, const Tree&) = default;

 private:
  friend class TreeGrower;
  std::vector<TreeNode> nodes_;
};

// Second-order loss reduction of splitting a node into (L, R).
inline double SplitGain(double g_left, double h_left, double g_right,
                        double h_right, double lambda) {
  const double g = g_left + g_right;
  const double h = h_left + h_right;
  return 0.5 * (g_left * g_left / (h_left + lambda) +
                g_right * g_right / (h_right + lambda) - g * g / (h + lambda));
}

struct HistBin {
  double g = 0.0;
  double h = 0.0;
};

// Per-(feature, bin) gradient sums for one node. Features outside the
// node's candidate set stay zero.
class Histogram {
 public:
  explicit Histogram(const BinnedMatrix& binned);

  std::span<HistBin> feature(std::size_t f) {
    return std::span<HistBin>(bins_).subspan(offsets_[f], offsets_[f + 1] - offsets_[f]);
  }
  std::span<const HistBin> feature(std::size_t f) const {
    return std::span<const HistBin>(bins_).subspan(offsets_[f],
                                                   offsets_[f + 1] - offsets_[f]);
  }
  // Accumulates `grads[row]` over `rows` (in the given order) for `features`.
  void Build(const BinnedMatrix& binned, std::span<const GradientPair> grads,
             std::span<const std::uint32_t> rows,
             std::span<const std::uint32_t> features);
  // this = parent - sibling, elementwise over `features`.
  void SetDifference(const Histogram& parent, const Histogram& sibling,
                     std::span<const std::uint32_t> features);

  const std::vector<HistBin>& raw() const { return bins_; }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<HistBin> bins_;
};

// Sorted uniform sample of ceil(fraction * m) feature ids.
std::vector<std::uint32_t> SampleFeatures(std::size_t num_features,
                                          double fraction, Rng& rng);

// Grows one regression tree level-wise to hp.max_depth on `grads` (one
// entry per row of `binned`) restricted to `sample`, considering only
// `features` (ascending). Leaves hold -G / (H + lambda) * learning_rate.
Tree GrowTree(const BinnedMatrix& binned, std::span<const GradientPair> grads,
              const RowSample& sample, const HyperParams& hp,
              std::span<const std::uint32_t> features);

// Same, sampling the feature subset from `rng` per hp.feature_fraction.
Tree GrowTree(const BinnedMatrix& binned, std::span<const GradientPair> grads,
              const RowSample& sample, const HyperParams& hp, Rng& rng);

}  // namespace boosthpo::gbdt

#endif  // BOOSTHPO_GBDT_TREE_HPP_
