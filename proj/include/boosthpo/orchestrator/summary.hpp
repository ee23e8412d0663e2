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

#ifndef BOOSTHPO_ORCHESTRATOR_SUMMARY_HPP_
#define BOOSTHPO_ORCHESTRATOR_SUMMARY_HPP_

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "boosthpo/bayesopt/optimizer.hpp"

namespace boosthpo::orch {

// Aggregates over Ok records only; failures are counted.
struct Summary {
  std::size_t num_records = 0;
  std::size_t num_ok = 0;
  std::size_t num_failed = 0;
  std::optional<double> best_score;
  std::optional<std::size_t> best_index;
  bo::Assignment best_params;
  double total_seconds = 0.0;
  double median_seconds = 0.0;
};

// Throws NoRecords on an empty list. Ties on the best score keep the
// earliest record.
Summary CollectResults(const std::vector<bo::TrialRecord>& records);

nlohmann::json SummaryToJson(const Summary& summary, const std::vector<std::string>& param_names);

// Per-configuration CSV: <index_column>, params..., score, seconds, status.
void WriteResultsCsv(std::ostream& out, const std::vector<std::string>& param_names,
                     const std::vector<bo::TrialRecord>& records,
                     const std::string& index_column = "grid_index");

}  // namespace boosthpo::orch

#endif  // BOOSTHPO_ORCHESTRATOR_SUMMARY_HPP_
