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

#ifndef BOOSTHPO_ORCHESTRATOR_RUN_GRID_HPP_
#define BOOSTHPO_ORCHESTRATOR_RUN_GRID_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "boosthpo/bayesopt/optimizer.hpp"
#include "boosthpo/dataset.hpp"
#include "boosthpo/gbdt/hyperparams.hpp"
#include "boosthpo/metrics.hpp"
#include "boosthpo/orchestrator/grid.hpp"
#include "boosthpo/orchestrator/slot_lock.hpp"

namespace boosthpo::orch {

// Trains on `train`, predicts `validation`, and scores it; seconds cover
// training and prediction.
bo::TrialOutcome TrainAndScore(const data::LabeledDataset& train,
                               const data::LabeledDataset& validation,
                               const gbdt::HyperParams& hp, metrics::Metric metric);

struct RunGridOptions {
  std::size_t workers = 1;
  // 0 means one host holding every worker. Otherwise workers are spread over
  // ceil(workers / slots_per_host) simulated hosts, each worker learning its
  // host only through BOOSTHPO_HOST_ID.
  std::size_t slots_per_host = 0;
  std::uint64_t seed = 0;
  // Holds the lock directory and per-worker result files.
  std::filesystem::path work_dir;
  RendezvousOptions rendezvous;
  // Its objective is replaced by the task default when it does not match.
  gbdt::HyperParams base;
  std::optional<metrics::Metric> metric;
  // Runs inside the worker before each trial; crash-injection hook.
  std::function<void(std::size_t grid_index, int attempt)> before_trial;
};

struct WorkerReport {
  std::size_t worker = 0;
  int attempt = 0;
  std::string host_id;
  std::optional<std::size_t> slot;
  std::string epoch;
  bool crashed = false;
  std::string error;
};

struct GridRunResult {
  // Sorted by grid index; index == grid index.
  std::vector<bo::TrialRecord> records;
  std::vector<WorkerReport> workers;
  std::size_t retried_partitions = 0;
};

// Forks one process per contiguous partition. A partition whose worker dies
// is retried once (remaining trials only) in a fresh epoch; trials still
// missing afterwards are marked Failed with a WorkerCrash message.
GridRunResult RunGrid(const Grid& grid, const data::LabeledDataset& train,
                      const data::LabeledDataset& validation, const RunGridOptions& options);

}  // namespace boosthpo::orch

#endif  // BOOSTHPO_ORCHESTRATOR_RUN_GRID_HPP_
