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

#ifndef BOOSTHPO_CLI_EXPERIMENT_HPP_
#define BOOSTHPO_CLI_EXPERIMENT_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "boosthpo/bayesopt/param_space.hpp"
#include "boosthpo/dataset.hpp"
#include "boosthpo/error.hpp"
#include "boosthpo/gbdt/hyperparams.hpp"
#include "boosthpo/metrics.hpp"
#include "boosthpo/orchestrator/grid.hpp"

namespace boosthpo::cli {

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitData = 3, kExitRuntime = 4 };

int ExitCodeFor(ErrorCode code);

struct SyntheticSpec {
  std::size_t rows = 10000;
  std::size_t features = 20;
  data::Task task = data::Task::Binary();
  double separation = 1.5;
  std::uint64_t seed = 0;
};

struct ExperimentConfig {
  // Exactly one of train_path / synthetic.
  std::optional<std::filesystem::path> train_path;
  // Held-out test set; the validation split doubles as test set when absent.
  std::optional<std::filesystem::path> test_path;
  std::optional<data::Task> task;
  std::optional<std::size_t> num_features;
  std::optional<SyntheticSpec> synthetic;

  double validation_fraction = 0.25;
  std::uint64_t split_seed = 0;
  std::optional<metrics::Metric> metric;

  // At most one of these is set.
  std::optional<orch::Profile> profile;
  std::optional<bo::ParamSpace> space;

  gbdt::HyperParams hyperparams;
  bool hyperparams_seed_set = false;
  bool hyperparams_objective_set = false;
  std::size_t budget = 150;
  std::size_t init_count = 8;
  std::size_t repeats = 3;
  std::size_t random_control = 0;
  std::size_t workers = 1;
  std::size_t slots_per_host = 0;
  std::uint64_t seed = 0;
  std::filesystem::path out = "out";
};

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  std::optional<std::size_t> slots_per_host;
  std::optional<std::filesystem::path> out;
  std::optional<std::string> preset;
};

std::vector<std::string> PresetNames();
// Hyper-parameter spaces of the HPO presets.
bo::ParamSpace HpoSpace(orch::Profile profile);

// Relative dataset paths resolve against `base_dir`. Throws Config.
ExperimentConfig ParseConfig(const nlohmann::json& doc,
                             const std::filesystem::path& base_dir = {});
ExperimentConfig LoadConfig(const std::filesystem::path& path);
// Presets fill the profile or parameter space; combining a preset with an
// explicit profile/space is a Config error.
void ApplyOverrides(ExperimentConfig& config, const Overrides& overrides);
void ApplyPreset(ExperimentConfig& config, const std::string& name);

struct Splits {
  data::LabeledDataset train;
  data::LabeledDataset validation;
  std::optional<data::LabeledDataset> test;

  const data::LabeledDataset& test_or_validation() const { return test ? *test : validation; }
};

Splits LoadSplits(const ExperimentConfig& config);
metrics::Metric MetricFor(const ExperimentConfig& config, const data::LabeledDataset& data);

// Each command writes its artifacts under config.out plus a metadata.json
// holding timestamps, and returns the JSON it wrote as its report.
nlohmann::json CmdTrain(const ExperimentConfig& config);
nlohmann::json CmdEval(const ExperimentConfig& config, const std::filesystem::path& model);
nlohmann::json CmdBaseline(const ExperimentConfig& config);
nlohmann::json CmdGrid(const ExperimentConfig& config);
nlohmann::json CmdHpo(const ExperimentConfig& config);
nlohmann::json CmdReportCurve(const std::filesystem::path& trial_log,
                              const std::filesystem::path& out_dir);

}  // namespace boosthpo::cli

#endif  // BOOSTHPO_CLI_EXPERIMENT_HPP_
