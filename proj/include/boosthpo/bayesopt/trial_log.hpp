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

#ifndef BOOSTHPO_BAYESOPT_TRIAL_LOG_HPP_
#define BOOSTHPO_BAYESOPT_TRIAL_LOG_HPP_

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "boosthpo/bayesopt/optimizer.hpp"

namespace boosthpo::bo {

// Writes trials to a CSV file and a JSON-lines mirror.
// The CSV header is: <index_column>, one column per dimension, score,
// seconds, status.
class TrialLogWriter {
 public:
  TrialLogWriter(const std::filesystem::path& csv_path, const std::filesystem::path& jsonl_path,
                 std::vector<std::string> param_names,
                 std::string index_column = "trial_index");

  void Append(const TrialRecord& record);

 private:
  std::vector<std::string> names_;
  std::string index_column_;
  std::ofstream csv_;
  std::ofstream jsonl_;
};

std::string CsvHeader(const std::vector<std::string>& param_names,
                      const std::string& index_column);
std::string CsvRow(std::size_t num_params, const TrialRecord& record);
std::string JsonLine(const std::vector<std::string>& param_names, const TrialRecord& record,
                     const std::string& index_column);

// The columns the curve needs, read back from any trial or grid CSV.
struct LoggedTrial {
  std::size_t index = 0;
  std::optional<double> score;
  double seconds = 0.0;
  TrialStatus status = TrialStatus::kOk;
};

std::vector<LoggedTrial> ReadTrialCsv(std::istream& in);
std::vector<LoggedTrial> ReadTrialCsv(const std::filesystem::path& path);
std::vector<LoggedTrial> ToLogged(const std::vector<TrialRecord>& records);

struct CurvePoint {
  double cumulative_seconds = 0.0;
  std::optional<double> best_score_so_far;
};

// One point per trial, in log order. Throws NoRecords on an empty log.
std::vector<CurvePoint> ComputeCurve(const std::vector<LoggedTrial>& log);
void WriteCurveCsv(std::ostream& out, const std::vector<CurvePoint>& curve);

}  // namespace boosthpo::bo

#endif  // BOOSTHPO_BAYESOPT_TRIAL_LOG_HPP_
