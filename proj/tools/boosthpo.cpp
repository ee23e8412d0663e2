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

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "boosthpo/cli/experiment.hpp"
#include "boosthpo/error.hpp"

namespace {

using boosthpo::cli::ExperimentConfig;
using boosthpo::cli::Overrides;

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  std::optional<std::size_t> slots_per_host;
  std::optional<std::string> out;
  std::optional<std::string> preset;
};

void AddCommon(CLI::App* cmd, CommonFlags& f, bool config_required = true) {
  auto* opt = cmd->add_option("--config", f.config, "experiment config (JSON)");
  if (config_required) opt->required();
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--workers", f.workers, "worker processes for grid search");
  cmd->add_option("--slots-per-host", f.slots_per_host, "resource slots per host");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--preset", f.preset, "xgb-grid, lgbm-grid, cat-grid, xgb-hpo, lgbm-hpo, cat-hpo");
}

ExperimentConfig Resolve(const CommonFlags& f) {
  ExperimentConfig config = boosthpo::cli::LoadConfig(f.config);
  Overrides o;
  o.seed = f.seed;
  o.workers = f.workers;
  o.slots_per_host = f.slots_per_host;
  if (f.out) o.out = *f.out;
  o.preset = f.preset;
  boosthpo::cli::ApplyOverrides(config, o);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gradient boosted trees with grid search and Bayesian hyper-parameter optimization"};
  app.require_subcommand(1);

  CommonFlags train_f, eval_f, baseline_f, grid_f, hpo_f;
  std::string model_path;
  std::string log_path;
  std::string curve_out = ".";

  auto* train = app.add_subcommand("train", "train one model and report validation metrics");
  AddCommon(train, train_f);
  auto* eval = app.add_subcommand("eval", "evaluate a saved model");
  AddCommon(eval, eval_f);
  eval->add_option("--model", model_path, "model JSON written by train")->required();
  auto* baseline = app.add_subcommand("baseline", "class-frequency baseline");
  AddCommon(baseline, baseline_f);
  auto* grid = app.add_subcommand("grid", "parallel grid search");
  AddCommon(grid, grid_f);
  auto* hpo = app.add_subcommand("hpo", "Bayesian hyper-parameter optimization");
  AddCommon(hpo, hpo_f);
  auto* curve = app.add_subcommand("report-curve", "best score vs. cumulative runtime");
  curve->add_option("--log", log_path, "trial or grid CSV")->required();
  curve->add_option("--out", curve_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : boosthpo::cli::kExitConfig;
  }

  try {
    nlohmann::json report;
    if (*train) {
      report = boosthpo::cli::CmdTrain(Resolve(train_f));
    } else if (*eval) {
      report = boosthpo::cli::CmdEval(Resolve(eval_f), model_path);
    } else if (*baseline) {
      report = boosthpo::cli::CmdBaseline(Resolve(baseline_f));
    } else if (*grid) {
      report = boosthpo::cli::CmdGrid(Resolve(grid_f));
    } else if (*hpo) {
      report = boosthpo::cli::CmdHpo(Resolve(hpo_f));
    } else if (*curve) {
      report = boosthpo::cli::CmdReportCurve(log_path, curve_out);
    }
    std::cout << report.dump(2) << "\n";
    return boosthpo::cli::kExitOk;
  } catch (const boosthpo::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return boosthpo::cli::ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return boosthpo::cli::kExitRuntime;
  }
}
