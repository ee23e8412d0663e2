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

#ifndef BOOSTHPO_GBDT_BOOSTER_HPP_
#define BOOSTHPO_GBDT_BOOSTER_HPP_

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "boosthpo/dataset.hpp"
#include "boosthpo/gbdt/ensemble.hpp"
#include "boosthpo/gbdt/hyperparams.hpp"

namespace boosthpo::gbdt {

// Scores row-major probabilities (n x num_classes) of `data`.
using EvalMetric = std::function<double(const data::LabeledDataset& data,
                                        std::span<const double> probabilities)>;

struct EvalSet {
  const data::LabeledDataset* data = nullptr;
  EvalMetric metric;
};

struct TrainResult {
  Ensemble ensemble;
  // Metric on the eval set after each iteration (empty without an eval set).
  std::vector<double> eval_log;
  // Training log-loss after each iteration, when requested.
  std::vector<double> train_loss_log;
};

struct TrainOptions {
  std::optional<EvalSet> eval;
  bool record_train_loss = false;
};

// Throws ObjectiveMismatch when hp.objective does not fit the dataset task.
TrainResult Train(const data::LabeledDataset& dataset, const HyperParams& hp,
                  const TrainOptions& options = {});

}  // namespace boosthpo::gbdt

#endif  // BOOSTHPO_GBDT_BOOSTER_HPP_
