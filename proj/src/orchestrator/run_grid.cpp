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

#include "boosthpo/orchestrator/run_grid.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>

#include <nlohmann/json.hpp>

#include "boosthpo/error.hpp"
#include "boosthpo/gbdt/booster.hpp"
#include "boosthpo/random.hpp"

namespace boosthpo::orch {
namespace fs = std::filesystem;
namespace {

constexpr int kWorkerSetupFailure = 3;

struct Job {
  std::size_t worker = 0;
  std::size_t host = 0;
  std::vector<std::size_t> indices;
};

struct Outcome {
  std::map<std::size_t, bo::TrialRecord> done;
  WorkerReport report;
};

fs::path ResultsPath(const fs::path& dir, int attempt, std::size_t worker) {
  return dir / ("attempt" + std::to_string(attempt) + "-worker" + std::to_string(worker) +
                ".jsonl");
}

void WriteLine(std::ofstream& out, const nlohmann::json& j) {
  out << j.dump() << "\n";
  out.flush();
}

int WorkerMain(const Grid& grid, const data::LabeledDataset& train,
               const data::LabeledDataset& validation, const RunGridOptions& options,
               metrics::Metric metric, const gbdt::HyperParams& base, const Job& job,
               int attempt, const std::string& epoch, std::size_t expected, bool simulate_hosts,
               const std::string& base_host, const fs::path& results) {
  std::ofstream out(results, std::ios::trunc);
  if (!out) return kWorkerSetupFailure;
  try {
    if (simulate_hosts) {
      const std::string host = base_host + "-h" + std::to_string(job.host);
      setenv(kHostIdEnv, host.c_str(), 1);
    }
    const std::size_t slots = options.slots_per_host == 0 ? options.workers : options.slots_per_host;
    const SlotAssignment slot =
        AcquireSlot(options.work_dir / "locks", epoch, DetectHostId(), slots,
                    "w" + std::to_string(job.worker) + "-a" + std::to_string(attempt) + "-p" +
                        std::to_string(getpid()),
                    expected, options.rendezvous);
    WriteLine(out, {{"host", slot.host_id}, {"slot", slot.slot}, {"epoch", slot.epoch}});
  } catch (const std::exception& e) {
    WriteLine(out, {{"error", e.what()}});
    return kWorkerSetupFailure;
  }
  for (std::size_t gi : job.indices) {
    if (options.before_trial) options.before_trial(gi, attempt);
    nlohmann::json line{{"grid_index", gi}};
    const auto start = std::chrono::steady_clock::now();
    try {
      gbdt::HyperParams hp = ApplyAssignment(base, grid.names(), grid.At(gi));
      hp.seed = DeriveSeed(options.seed, {gi});
      const bo::TrialOutcome r = TrainAndScore(train, validation, hp, metric);
      line["score"] = r.score;
      line["seconds"] = r.seconds;
      line["status"] = "ok";
    } catch (const std::exception& e) {
      line["score"] = nullptr;
      line["seconds"] =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      line["status"] = "failed";
      line["message"] = e.what();
    }
    WriteLine(out, line);
  }
  return 0;
}

Outcome ReadResults(const fs::path& path, const Grid& grid) {
  Outcome o;
  std::ifstream in(path);
  std::string text;
  while (std::getline(in, text)) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) continue;  // torn final line of a crashed worker
    if (j.contains("error")) {
      o.report.error = j["error"].get<std::string>();
    } else if (j.contains("slot")) {
      o.report.host_id = j["host"].get<std::string>();
      o.report.slot = j["slot"].get<std::size_t>();
      o.report.epoch = j["epoch"].get<std::string>();
    } else if (j.contains("grid_index")) {
      bo::TrialRecord r;
      r.index = j["grid_index"].get<std::size_t>();
      r.params = grid.At(r.index);
      r.seconds = j["seconds"].get<double>();
      r.status = bo::TrialStatusFromName(j["status"].get<std::string>());
      if (r.status == bo::TrialStatus::kOk) r.score = j["score"].get<double>();
      if (j.contains("message")) r.message = j["message"].get<std::string>();
      o.done[r.index] = std::move(r);
    }
  }
  return o;
}

}  // namespace

bo::TrialOutcome TrainAndScore(const data::LabeledDataset& train,
                               const data::LabeledDataset& validation,
                               const gbdt::HyperParams& hp, metrics::Metric metric) {
  const auto start = std::chrono::steady_clock::now();
  const gbdt::TrainResult result = gbdt::Train(train, hp);
  const std::vector<double> proba = result.ensemble.PredictProba(validation);
  const double score = metrics::Evaluate(metric, validation, proba).value;
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {score, seconds};
}

GridRunResult RunGrid(const Grid& grid, const data::LabeledDataset& train,
                      const data::LabeledDataset& validation, const RunGridOptions& options) {
  if (options.workers == 0) throw Error(ErrorCode::kInvalidArgument, "workers must be >= 1");
  if (options.work_dir.empty()) throw Error(ErrorCode::kInvalidArgument, "work_dir is required");
  const metrics::Metric metric = options.metric.value_or(metrics::DefaultMetric(train));
  gbdt::HyperParams base = options.base;
  if (!base.objective.Matches(train.task())) base.objective = gbdt::Objective::ForTask(train.task());

  const std::size_t slots = options.slots_per_host == 0 ? options.workers : options.slots_per_host;
  const bool simulate_hosts = options.workers > slots;
  const std::string base_host = DetectHostId();
  const fs::path results_dir = options.work_dir / "results";
  fs::create_directories(results_dir);

  std::vector<Job> pending;
  for (const auto& [begin, end] : Partition(grid.size(), options.workers)) {
    Job job;
    job.worker = pending.size();
    job.host = job.worker / slots;
    for (std::size_t i = begin; i < end; ++i) job.indices.push_back(i);
    pending.push_back(std::move(job));
  }

  GridRunResult result;
  std::map<std::size_t, bo::TrialRecord> done;
  for (int attempt = 0; attempt < 2 && !pending.empty(); ++attempt) {
    if (attempt == 1) result.retried_partitions = pending.size();
    const std::string epoch = NewEpochId();
    ClearEpoch(options.work_dir / "locks", epoch);
    std::cout.flush();
    std::cerr.flush();
    std::fflush(nullptr);

    std::vector<pid_t> pids;
    for (const Job& job : pending) {
      const fs::path path = ResultsPath(results_dir, attempt, job.worker);
      const pid_t pid = fork();
      if (pid < 0) throw Error(ErrorCode::kWorkerCrash, "fork failed");
      if (pid == 0) {
        int code = kWorkerSetupFailure;
        try {
          code = WorkerMain(grid, train, validation, options, metric, base, job, attempt, epoch,
                            pending.size(), simulate_hosts, base_host, path);
        } catch (...) {
        }
        std::fflush(nullptr);
        _exit(code);
      }
      pids.push_back(pid);
    }

    std::vector<Job> crashed;
    for (std::size_t k = 0; k < pending.size(); ++k) {
      int status = 0;
      while (waitpid(pids[k], &status, 0) < 0 && errno == EINTR) {
      }
      const Job& job = pending[k];
      Outcome o = ReadResults(ResultsPath(results_dir, attempt, job.worker), grid);
      o.report.worker = job.worker;
      o.report.attempt = attempt;
      o.report.crashed = !(WIFEXITED(status) && WEXITSTATUS(status) == 0);
      if (o.report.crashed && o.report.error.empty()) {
        o.report.error = WIFSIGNALED(status)
                             ? "killed by signal " + std::to_string(WTERMSIG(status))
                             : "exit status " + std::to_string(WEXITSTATUS(status));
      }
      Job rest = job;
      rest.indices.clear();
      for (std::size_t gi : job.indices) {
        if (auto it = o.done.find(gi); it != o.done.end()) {
          done[gi] = std::move(it->second);
        } else {
          rest.indices.push_back(gi);
        }
      }
      if (!rest.indices.empty()) crashed.push_back(std::move(rest));
      result.workers.push_back(std::move(o.report));
    }
    pending = std::move(crashed);
  }

  result.records.reserve(grid.size());
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    if (auto it = done.find(gi); it != done.end()) {
      result.records.push_back(std::move(it->second));
      continue;
    }
    bo::TrialRecord r;
    r.index = gi;
    r.params = grid.At(gi);
    r.status = bo::TrialStatus::kFailed;
    r.message = std::string(ErrorCodeName(ErrorCode::kWorkerCrash)) +
                ": worker died twice on this partition";
    result.records.push_back(std::move(r));
  }
  return result;
}

}  // namespace boosthpo::orch
