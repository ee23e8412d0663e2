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

#include "boosthpo/orchestrator/summary.hpp"

#include <algorithm>

#include "boosthpo/bayesopt/trial_log.hpp"
#include "boosthpo/error.hpp"

namespace boosthpo::orch {

Summary CollectResults(const std::vector<bo::TrialRecord>& records) {
  if (records.empty()) throw Error(ErrorCode::kNoRecords, "no trial records to summarize");
  Summary s;
  s.num_records = records.size();
  std::vector<double> seconds;
  for (const auto& r : records) {
    if (r.status != bo::TrialStatus::kOk || !r.score) {
      ++s.num_failed;
      continue;
    }
    ++s.num_ok;
    seconds.push_back(r.seconds);
    s.total_seconds += r.seconds;
    if (!s.best_score || *r.score > *s.best_score) {
      s.best_score = r.score;
      s.best_index = r.index;
      s.best_params = r.params;
    }
  }
  if (!seconds.empty()) {
    std::sort(seconds.begin(), seconds.end());
    const std::size_t m = seconds.size() / 2;
    s.median_seconds = seconds.size() % 2 ? seconds[m] : 0.5 * (seconds[m - 1] + seconds[m]);
  }
  return s;
}

nlohmann::json SummaryToJson(const Summary& summary, const std::vector<std::string>& param_names) {
  nlohmann::json j;
  j["num_records"] = summary.num_records;
  j["num_ok"] = summary.num_ok;
  j["num_failed"] = summary.num_failed;
  j["best_score"] = summary.best_score ? nlohmann::json(*summary.best_score) : nlohmann::json();
  j["best_index"] = summary.best_index ? nlohmann::json(*summary.best_index) : nlohmann::json();
  j["best_params"] = summary.best_index ? bo::AssignmentToJson(param_names, summary.best_params)
                                        : nlohmann::json();
  j["total_seconds"] = summary.total_seconds;
  j["median_seconds"] = summary.median_seconds;
  return j;
}

void WriteResultsCsv(std::ostream& out, const std::vector<std::string>& param_names,
                     const std::vector<bo::TrialRecord>& records,
                     const std::string& index_column) {
  out << bo::CsvHeader(param_names, index_column) << "\n";
  for (const auto& r : records) out << bo::CsvRow(param_names.size(), r) << "\n";
}

}  // namespace boosthpo::orch
