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

#include "boosthpo/gbdt/tree.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

#include "boosthpo/error.hpp"

namespace boosthpo::gbdt {

Tree::Tree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw Error(ErrorCode::kBadModel, "tree has no nodes");
}

std::size_t Tree::num_leaves() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

int Tree::depth() const {
  std::vector<std::pair<std::int32_t, int>> stack{{0, 0}};
  int deepest = 0;
  while (!stack.empty()) {
    auto [id, d] = stack.back();
    stack.pop_back();
    deepest = std::max(deepest, d);
    const TreeNode& node = nodes_[id];
    if (!node.is_leaf()) {
      stack.push_back({node.left, d + 1});
      stack.push_back({node.right, d + 1});
    }
  }
  return deepest;
}

double Tree::PredictBinned(const BinnedMatrix& binned, std::size_t row) const {
  const TreeNode* node = &nodes_[0];
  while (!node->is_leaf()) {
    const BinId bin = binned.bin_index[node->feature][row];
    node = &nodes_[bin <= node->bin ? node->left : node->right];
  }
  return node->value;
}

double Tree::PredictRaw(std::span<const double> row) const {
  const TreeNode* node = &nodes_[0];
  while (!node->is_leaf()) {
    const auto f = static_cast<std::size_t>(node->feature);
    const double v = f < row.size() ? row[f] : 0.0;
    node = &nodes_[v < node->threshold ? node->left : node->right];
  }
  return node->value;
}

void Tree::CheckWellFormed(std::span<const std::vector<double>> boundaries) const {
  std::vector<bool> seen(nodes_.size(), false);
  std::vector<std::pair<std::int32_t, int>> stack{{0, 0}};
  std::size_t visited = 0;
  auto fail = [](const std::string& what) { throw Error(ErrorCode::kBadModel, what); };
  while (!stack.empty()) {
    auto [id, d] = stack.back();
    stack.pop_back();
    if (id < 0 || static_cast<std::size_t>(id) >= nodes_.size()) fail("child index out of range");
    if (seen[id]) fail("node reachable twice");
    if (d > kMaxDepth) fail("tree deeper than 32");
    seen[id] = true;
    ++visited;
    const TreeNode& node = nodes_[id];
    if (node.is_leaf()) {
      if (!std::isfinite(node.value)) fail("non-finite leaf value");
      continue;
    }
    if (static_cast<std::size_t>(node.feature) >= boundaries.size()) fail("split feature out of range");
    if (static_cast<std::size_t>(node.bin) + 1 >= boundaries[node.feature].size() + 1) {
      fail("split bin out of range");
    }
    stack.push_back({node.left, d + 1});
    stack.push_back({node.right, d + 1});
  }
  if (visited != nodes_.size()) fail("unreachable nodes");
}

Histogram::Histogram(const BinnedMatrix& binned) {
  offsets_.reserve(binned.num_features() + 1);
  offsets_.push_back(0);
  for (std::size_t f = 0; f < binned.num_features(); ++f) {
    offsets_.push_back(offsets_.back() + static_cast<std::size_t>(binned.num_bins_used(f)));
  }
  bins_.assign(offsets_.back(), HistBin{});
}

void Histogram::Build(const BinnedMatrix& binned, std::span<const GradientPair> grads,
                      std::span<const std::uint32_t> rows,
                      std::span<const std::uint32_t> features) {
  for (std::uint32_t f : features) {
    auto out = feature(f);
    std::fill(out.begin(), out.end(), HistBin{});
    const BinId* bins = binned.bin_index[f].data();
    for (std::uint32_t r : rows) {
      HistBin& b = out[bins[r]];
      b.g += grads[r].g;
      b.h += grads[r].h;
    }
  }
}

void Histogram::SetDifference(const Histogram& parent, const Histogram& sibling,
                              std::span<const std::uint32_t> features) {
  for (std::uint32_t f : features) {
    auto out = feature(f);
    auto p = parent.feature(f);
    auto s = sibling.feature(f);
    for (std::size_t b = 0; b < out.size(); ++b) {
      out[b].g = p[b].g - s[b].g;
      out[b].h = p[b].h - s[b].h;
    }
  }
}

std::vector<std::uint32_t> SampleFeatures(std::size_t num_features, double fraction,
                                          Rng& rng) {
  std::vector<std::uint32_t> ids(num_features);
  std::iota(ids.begin(), ids.end(), 0u);
  const double x = fraction * static_cast<double>(num_features);
  auto k = static_cast<std::size_t>(std::ceil(x - 1e-9 * std::max(1.0, x)));
  k = std::clamp<std::size_t>(k, std::min<std::size_t>(1, num_features), num_features);
  if (k == num_features) return ids;
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(ids[i], ids[i + UniformIndex(rng, num_features - i)]);
  }
  ids.resize(k);
  std::sort(ids.begin(), ids.end());
  return ids;
}

namespace {

struct SplitChoice {
  bool found = false;
  std::uint32_t feature = 0;
  BinId bin = 0;
  double gain = 0.0;
};

double LeafValue(double g, double h, const HyperParams& hp) {
  const double denom = h + hp.lambda;
  if (!(denom > 0.0)) return 0.0;
  return -g / denom * hp.learning_rate + 0.0;
}

}  // namespace

class TreeGrower {
 public:
  TreeGrower(const BinnedMatrix& binned, std::vector<GradientPair> weighted,
             const HyperParams& hp, std::span<const std::uint32_t> features)
      : binned_(binned), grads_(std::move(weighted)), hp_(hp), features_(features) {}

  Tree Grow(std::vector<std::uint32_t> rows) {
    Histogram root(binned_);
    root.Build(binned_, grads_, rows, features_);
    nodes_.assign(1, TreeNode{});
    GrowNode(0, rows, root, 0);
    Tree tree;
    tree.nodes_ = std::move(nodes_);
    return tree;
  }

 private:
  void Sums(std::span<const std::uint32_t> rows, double& g, double& h) const {
    g = 0.0;
    h = 0.0;
    for (std::uint32_t r : rows) {
      g += grads_[r].g;
      h += grads_[r].h;
    }
  }

  SplitChoice FindSplit(const Histogram& hist, double g_total, double h_total) const {
    SplitChoice best;
    for (std::uint32_t f : features_) {
      const auto bins = hist.feature(f);
      double g_left = 0.0;
      double h_left = 0.0;
      for (std::size_t t = 0; t + 1 < bins.size(); ++t) {
        g_left += bins[t].g;
        h_left += bins[t].h;
        const double g_right = g_total - g_left;
        const double h_right = h_total - h_left;
        if (h_left < hp_.min_child_hessian || h_right < hp_.min_child_hessian) continue;
        const double gain = SplitGain(g_left, h_left, g_right, h_right, hp_.lambda);
        if (gain > best.gain) {
          best = {true, f, static_cast<BinId>(t), gain};
        }
      }
    }
    return best;
  }

  Histogram& Scratch(int depth) {
    while (scratch_.size() <= static_cast<std::size_t>(depth)) {
      scratch_.push_back(std::make_unique<Histogram>(binned_));
    }
    return *scratch_[depth];
  }

  void GrowNode(std::int32_t id, std::vector<std::uint32_t>& rows, Histogram& hist, int depth) {
    double g = 0.0;
    double h = 0.0;
    Sums(rows, g, h);
    SplitChoice split;
    if (depth < hp_.max_depth && rows.size() >= 2) split = FindSplit(hist, g, h);
    if (!split.found) {
      nodes_[id].value = LeafValue(g, h, hp_);
      return;
    }

    std::vector<std::uint32_t> left;
    std::vector<std::uint32_t> right;
    const BinId* bins = binned_.bin_index[split.feature].data();
    for (std::uint32_t r : rows) (bins[r] <= split.bin ? left : right).push_back(r);
    rows.clear();
    rows.shrink_to_fit();

    const auto left_id = static_cast<std::int32_t>(nodes_.size());
    TreeNode& node = nodes_[id];
    node.feature = static_cast<std::int32_t>(split.feature);
    node.bin = split.bin;
    node.threshold = binned_.boundaries[split.feature][split.bin];
    node.gain = split.gain;
    node.left = left_id;
    node.right = left_id + 1;
    nodes_.resize(nodes_.size() + 2);

    // Build the smaller child directly; the larger one is parent - smaller.
    const bool left_small = left.size() <= right.size();
    Histogram& small = Scratch(depth + 1);
    small.Build(binned_, grads_, left_small ? left : right, features_);
    hist.SetDifference(hist, small, features_);
    Histogram& left_hist = left_small ? small : hist;
    Histogram& right_hist = left_small ? hist : small;
    GrowNode(left_id, left, left_hist, depth + 1);
    GrowNode(left_id + 1, right, right_hist, depth + 1);
  }

  const BinnedMatrix& binned_;
  std::vector<GradientPair> grads_;
  const HyperParams& hp_;
  std::span<const std::uint32_t> features_;
  std::vector<TreeNode> nodes_;
  std::vector<std::unique_ptr<Histogram>> scratch_;
};

Tree GrowTree(const BinnedMatrix& binned, std::span<const GradientPair> grads,
              const RowSample& sample, const HyperParams& hp,
              std::span<const std::uint32_t> features) {
  if (sample.rows.empty()) throw Error(ErrorCode::kInvalidArgument, "no rows to grow a tree on");
  if (grads.size() != binned.num_rows) {
    throw Error(ErrorCode::kInvalidArgument, "gradient count differs from row count");
  }
  std::vector<GradientPair> weighted(binned.num_rows);
  for (std::size_t i = 0; i < sample.rows.size(); ++i) {
    const std::uint32_t r = sample.rows[i];
    const double m = sample.multipliers.empty() ? 1.0 : sample.multipliers[i];
    weighted[r] = {grads[r].g * m, grads[r].h * m};
  }
  TreeGrower grower(binned, std::move(weighted), hp, features);
  return grower.Grow(sample.rows);
}

Tree GrowTree(const BinnedMatrix& binned, std::span<const GradientPair> grads,
              const RowSample& sample, const HyperParams& hp, Rng& rng) {
  const auto features = SampleFeatures(binned.num_features(), hp.feature_fraction, rng);
  return GrowTree(binned, grads, sample, hp, features);
}

}  // namespace boosthpo::gbdt
