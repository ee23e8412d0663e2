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

#ifndef BOOSTHPO_GBDT_BINNING_HPP_
#define BOOSTHPO_GBDT_BINNING_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "boosthpo/dataset.hpp"

namespace boosthpo::gbdt {

using BinId = std::uint16_t;

// Quantized feature matrix. Bin of value v for feature f is the number of
// boundaries of f that are <= v.
struct BinnedMatrix {
  std::size_t num_rows = 0;
  std::vector<std::vector<double>> boundaries;
  // bin_index[f][row]
  std::vector<std::vector<BinId>> bin_index;

  std::size_t num_features() const { return boundaries.size(); }
  int num_bins_used(std::size_t feature) const {
    return static_cast<int>(boundaries[feature].size()) + 1;
  }
};

// Global quantile sketch: boundaries at the k/num_bins empirical quantiles,
// or midpoints between distinct values when a feature has few of them.
std::vector<double> ProposeBoundaries(std::vector<double> values, int num_bins);

BinnedMatrix BuildBins(const data::LabeledDataset& dataset, int num_bins);

// Bins a dataset with boundaries fixed elsewhere (validation/test data).
BinnedMatrix ApplyBins(const data::LabeledDataset& dataset,
                       const std::vector<std::vector<double>>& boundaries);

inline BinId BinOf(std::span<const double> boundaries, double value) {
  return static_cast<BinId>(
      std::upper_bound(boundaries.begin(), boundaries.end(), value) -
      boundaries.begin());
}

}  // namespace boosthpo::gbdt

#endif  // BOOSTHPO_GBDT_BINNING_HPP_
