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

#include "boosthpo/gbdt/booster.hpp"

#include <cmath>

#include "boosthpo/error.hpp"
#include "boosthpo/gbdt/binning.hpp"
#include "boosthpo/gbdt/goss.hpp"
#include "boosthpo/gbdt/tree.hpp"
#include "boosthpo/random.hpp"

namespace boosthpo::gbdt {

namespace {

// Stream tags for DeriveSeed.
constexpr std::uint64_t kGossStream = 1;
constexpr std::uint64_t kFeatureStream = 2;

}  // namespace

TrainResult Train(const data::LabeledDataset& dataset, const HyperParams& hp,
                  const TrainOptions& options) {
  hp.Validate();
  if (dataset.num_rows() == 0) throw Error(ErrorCode::kEmptyDataset, "no rows");
  if (!hp.objective.Matches(dataset.task())) {
    throw Error(ErrorCode::kObjectiveMismatch,
                hp.objective.Name() + " with " + std::to_string(hp.objective.num_classes) +
                    " classes does not fit task " + dataset.task().ToString());
  }
  const std::size_t n = dataset.num_rows();
  const auto k_out = static_cast<std::size_t>(hp.objective.num_outputs());

  const BinnedMatrix binned = BuildBins(dataset, hp.num_bins);
  const std::vector<double> base =
      BaseMargins(data::ClassFrequencies(dataset), hp.objective);

  std::vector<double> margins(n * k_out);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < k_out; ++k) margins[i * k_out + k] = base[k];
  }

  const data::LabeledDataset* eval_data = options.eval ? options.eval->data : nullptr;
  BinnedMatrix eval_binned;
  std::vector<double> eval_margins;
  if (eval_data != nullptr) {
    if (eval_data->task() != dataset.task()) {
      throw Error(ErrorCode::kObjectiveMismatch, "eval set task differs from training task");
    }
    eval_binned = ApplyBins(*eval_data, binned.boundaries);
    eval_margins.resize(eval_data->num_rows() * k_out);
    for (std::size_t i = 0; i < eval_data->num_rows(); ++i) {
      for (std::size_t k = 0; k < k_out; ++k) eval_margins[i * k_out + k] = base[k];
    }
  }

  TrainResult result;
  std::vector<std::vector<Tree>> trees(k_out);
  std::vector<GradientPair> column(n);
  const auto labels = std::span<const int>(dataset.labels());

  for (int iter = 0; iter < hp.iterations; ++iter) {
    const auto grads = ComputeGradients(margins, labels, hp.objective);

    RowSample sample;
    if (hp.boosting.is_goss()) {
      std::vector<double> magnitude(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < k_out; ++k) magnitude[i] += std::abs(grads[i * k_out + k].g);
      }
      sample = GossSample(magnitude, hp.boosting.top_rate, hp.boosting.other_rate,
                          DeriveSeed(hp.seed, {kGossStream, static_cast<std::uint64_t>(iter)}));
    } else {
      sample = AllRows(n);
    }

    for (std::size_t k = 0; k < k_out; ++k) {
      for (std::size_t i = 0; i < n; ++i) column[i] = grads[i * k_out + k];
      Rng rng(DeriveSeed(hp.seed, {kFeatureStream, static_cast<std::uint64_t>(iter), k}));
      Tree tree = GrowTree(binned, column, sample, hp, rng);
      for (std::size_t i = 0; i < n; ++i) margins[i * k_out + k] += tree.PredictBinned(binned, i);
      if (eval_data != nullptr) {
        for (std::size_t i = 0; i < eval_data->num_rows(); ++i) {
          eval_margins[i * k_out + k] += tree.PredictBinned(eval_binned, i);
        }
      }
      trees[k].push_back(std::move(tree));
    }

    if (eval_data != nullptr) {
      const auto probs = MarginsToProbabilities(eval_margins, hp.objective);
      result.eval_log.push_back(options.eval->metric(*eval_data, probs));
    }
    if (options.record_train_loss) {
      const auto probs = MarginsToProbabilities(margins, hp.objective);
      result.train_loss_log.push_back(LogLoss(probs, labels, hp.objective.num_classes));
    }
  }

  result.ensemble = Ensemble(hp.objective, dataset.num_features(), base, binned.boundaries,
                             std::move(trees));
  return result;
}

}  // namespace boosthpo::gbdt
