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

#include "boosthpo/gbdt/binning.hpp"

#include <cmath>

#include "boosthpo/error.hpp"

namespace boosthpo::gbdt {

namespace {

double Midpoint(double lo, double hi) {
  const double mid = lo + (hi - lo) / 2.0;
  return mid > lo ? mid : hi;
}

void CheckFinite(std::span<const double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kNonFiniteFeature, "feature value is not finite");
    }
  }
}

std::vector<BinId> BinColumn(const data::LabeledDataset& dataset,
                             std::size_t feature,
                             std::span<const double> boundaries) {
  std::vector<BinId> bins(dataset.num_rows(), BinOf(boundaries, 0.0));
  const auto rows = dataset.column_rows(feature);
  const auto values = dataset.column_values(feature);
  CheckFinite(values);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    bins[rows[k]] = BinOf(boundaries, values[k]);
  }
  return bins;
}

}  // namespace

std::vector<double> ProposeBoundaries(std::vector<double> values, int num_bins) {
  if (num_bins < 2) throw Error(ErrorCode::kInvalidArgument, "num_bins must be >= 2");
  CheckFinite(values);
  std::vector<double> boundaries;
  if (values.empty()) return boundaries;
  std::sort(values.begin(), values.end());

  std::size_t distinct = 1;
  for (std::size_t i = 1; i < values.size() && distinct <= static_cast<std::size_t>(num_bins); ++i) {
    if (values[i] != values[i - 1]) ++distinct;
  }
  if (distinct <= static_cast<std::size_t>(num_bins)) {
    for (std::size_t i = 1; i < values.size(); ++i) {
      if (values[i] != values[i - 1]) boundaries.push_back(Midpoint(values[i - 1], values[i]));
    }
    return boundaries;
  }

  const std::size_t n = values.size();
  const auto bins = static_cast<std::size_t>(num_bins);
  for (std::size_t k = 1; k < bins; ++k) {
    const std::size_t idx = std::max<std::size_t>(1, k * n / bins);
    const double lo = values[idx - 1];
    const double hi = values[idx];
    const double cut = lo < hi ? Midpoint(lo, hi) : hi;
    if (cut > values.front() && (boundaries.empty() || cut > boundaries.back())) {
      boundaries.push_back(cut);
    }
  }
  return boundaries;
}

BinnedMatrix BuildBins(const data::LabeledDataset& dataset, int num_bins) {
  BinnedMatrix binned;
  binned.num_rows = dataset.num_rows();
  binned.boundaries.reserve(dataset.num_features());
  binned.bin_index.reserve(dataset.num_features());
  for (std::size_t f = 0; f < dataset.num_features(); ++f) {
    binned.boundaries.push_back(ProposeBoundaries(dataset.DenseColumn(f), num_bins));
    binned.bin_index.push_back(BinColumn(dataset, f, binned.boundaries.back()));
  }
  return binned;
}

BinnedMatrix ApplyBins(const data::LabeledDataset& dataset,
                       const std::vector<std::vector<double>>& boundaries) {
  if (dataset.num_features() > boundaries.size()) {
    throw Error(ErrorCode::kBadShape, "dataset has more features than the model");
  }
  BinnedMatrix binned;
  binned.num_rows = dataset.num_rows();
  binned.boundaries = boundaries;
  binned.bin_index.reserve(boundaries.size());
  for (std::size_t f = 0; f < boundaries.size(); ++f) {
    if (f < dataset.num_features()) {
      binned.bin_index.push_back(BinColumn(dataset, f, boundaries[f]));
    } else {
      binned.bin_index.emplace_back(dataset.num_rows(), BinOf(boundaries[f], 0.0));
    }
  }
  return binned;
}

}  // namespace boosthpo::gbdt
