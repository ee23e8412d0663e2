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

#include "boosthpo/bayesopt/trial_log.hpp"

#include <sstream>

#include "boosthpo/error.hpp"

namespace boosthpo::bo {
namespace {

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double ParseDouble(const std::string& s, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::kMalformedLine,
                "line " + std::to_string(line_no) + ": bad number '" + s + "'");
  }
}

}  // namespace

std::string CsvHeader(const std::vector<std::string>& param_names,
                      const std::string& index_column) {
  std::string out = index_column;
  for (const std::string& name : param_names) out += "," + name;
  out += ",score,seconds,status";
  return out;
}

std::string CsvRow(std::size_t num_params, const TrialRecord& record) {
  std::string out = std::to_string(record.index);
  for (std::size_t i = 0; i < num_params; ++i) {
    out += ",";
    if (i < record.params.size()) out += FormatValue(record.params[i]);
  }
  out += ",";
  if (record.score) out += FormatReal(*record.score);
  out += "," + FormatReal(record.seconds) + "," + std::string(TrialStatusName(record.status));
  return out;
}

std::string JsonLine(const std::vector<std::string>& param_names, const TrialRecord& record,
                     const std::string& index_column) {
  nlohmann::json j;
  j[index_column] = record.index;
  j["params"] = AssignmentToJson(param_names, record.params);
  j["score"] = record.score ? nlohmann::json(*record.score) : nlohmann::json(nullptr);
  j["seconds"] = record.seconds;
  j["status"] = TrialStatusName(record.status);
  if (!record.message.empty()) j["message"] = record.message;
  return j.dump();
}

TrialLogWriter::TrialLogWriter(const std::filesystem::path& csv_path,
                               const std::filesystem::path& jsonl_path,
                               std::vector<std::string> param_names, std::string index_column)
    : names_(std::move(param_names)), index_column_(std::move(index_column)),
      csv_(csv_path), jsonl_(jsonl_path) {
  if (!csv_ || !jsonl_) {
    throw Error(ErrorCode::kIo, "cannot open trial log under " + csv_path.parent_path().string());
  }
  csv_ << CsvHeader(names_, index_column_) << "\n";
  csv_.flush();
}

void TrialLogWriter::Append(const TrialRecord& record) {
  csv_ << CsvRow(names_.size(), record) << "\n";
  jsonl_ << JsonLine(names_, record, index_column_) << "\n";
  csv_.flush();
  jsonl_.flush();
}

std::vector<LoggedTrial> ReadTrialCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) return {};
  const std::vector<std::string> header = SplitCsv(line);
  int idx = -1, score = -1, seconds = -1, status = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    const std::string& h = header[i];
    if (h == "trial_index" || h == "grid_index") idx = static_cast<int>(i);
    if (h == "score") score = static_cast<int>(i);
    if (h == "seconds") seconds = static_cast<int>(i);
    if (h == "status") status = static_cast<int>(i);
  }
  if (idx < 0 || score < 0 || seconds < 0 || status < 0) {
    throw Error(ErrorCode::kMalformedLine, "trial log header lacks index/score/seconds/status");
  }
  std::vector<LoggedTrial> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> cells = SplitCsv(line);
    if (cells.size() != header.size()) {
      throw Error(ErrorCode::kMalformedLine, "line " + std::to_string(line_no) +
                                                 ": expected " + std::to_string(header.size()) +
                                                 " columns");
    }
    LoggedTrial t;
    t.index = static_cast<std::size_t>(ParseDouble(cells[idx], line_no));
    t.seconds = ParseDouble(cells[seconds], line_no);
    t.status = TrialStatusFromName(cells[status]);
    if (t.status == TrialStatus::kOk) t.score = ParseDouble(cells[score], line_no);
    out.push_back(t);
  }
  return out;
}

std::vector<LoggedTrial> ReadTrialCsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return ReadTrialCsv(in);
}

std::vector<LoggedTrial> ToLogged(const std::vector<TrialRecord>& records) {
  std::vector<LoggedTrial> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back({r.index, r.score, r.seconds, r.status});
  return out;
}

std::vector<CurvePoint> ComputeCurve(const std::vector<LoggedTrial>& log) {
  if (log.empty()) throw Error(ErrorCode::kNoRecords, "trial log is empty");
  std::vector<CurvePoint> out;
  out.reserve(log.size());
  double total = 0.0;
  std::optional<double> best;
  for (const auto& t : log) {
    total += t.seconds;
    if (t.status == TrialStatus::kOk && t.score && (!best || *t.score > *best)) best = t.score;
    out.push_back({total, best});
  }
  return out;
}

void WriteCurveCsv(std::ostream& out, const std::vector<CurvePoint>& curve) {
  out << "cumulative_seconds,best_score_so_far\n";
  for (const auto& p : curve) {
    out << FormatReal(p.cumulative_seconds) << ",";
    if (p.best_score_so_far) out << FormatReal(*p.best_score_so_far);
    out << "\n";
  }
}

}  // namespace boosthpo::bo
