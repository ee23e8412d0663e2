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

#include "boosthpo/cli/experiment.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "boosthpo/bayesopt/optimizer.hpp"
#include "boosthpo/bayesopt/trial_log.hpp"
#include "boosthpo/gbdt/booster.hpp"
#include "boosthpo/gbdt/ensemble.hpp"
#include "boosthpo/orchestrator/run_grid.hpp"
#include "boosthpo/orchestrator/summary.hpp"
#include "boosthpo/random.hpp"

namespace boosthpo::cli {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string IsoNow() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

void WriteJson(const fs::path& path, const json& doc) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << doc.dump(2) << "\n";
}

// Records wall-clock timestamps for a command in <out>/metadata.json.
class Metadata {
 public:
  Metadata(const fs::path& out, std::string command)
      : out_(out), command_(std::move(command)), started_(IsoNow()),
        start_(std::chrono::steady_clock::now()) {
    std::error_code ec;
    fs::create_directories(out_, ec);
    if (ec) throw Error(ErrorCode::kIo, "cannot create output directory " + out_.string());
  }

  void Finish() const {
    WriteJson(out_ / "metadata.json",
              {{"command", command_},
               {"version", kVersion},
               {"started_at", started_},
               {"finished_at", IsoNow()},
               {"wall_seconds", std::chrono::duration<double>(
                                    std::chrono::steady_clock::now() - start_)
                                    .count()}});
  }

 private:
  fs::path out_;
  std::string command_;
  std::string started_;
  std::chrono::steady_clock::time_point start_;
};

template <typename T>
T Get(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kConfig, std::string("config key '") + key + "': " + e.what());
  }
}

void RejectUnknownKeys(const json& j, const std::set<std::string>& known, const char* where) {
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) {
      throw Error(ErrorCode::kConfig, std::string("unknown key '") + key + "' in " + where);
    }
  }
}

fs::path Resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

gbdt::HyperParams BaseParams(const ExperimentConfig& config, const data::Task& task) {
  gbdt::HyperParams hp = config.hyperparams;
  if (!config.hyperparams_objective_set) hp.objective = gbdt::Objective::ForTask(task);
  if (!config.hyperparams_seed_set) hp.seed = config.seed;
  return hp;
}

json ReportJson(const metrics::EvalReport& report) {
  json j = report;
  return j;
}

metrics::EvalReport Score(metrics::Metric metric, const gbdt::Ensemble& model,
                          const data::LabeledDataset& data) {
  return metrics::Evaluate(metric, data, model.PredictProba(data));
}

}  // namespace

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfig:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kOutOfRange:
    case ErrorCode::kBadRates:
    case ErrorCode::kObjectiveMismatch:
    case ErrorCode::kFractionOutOfRange:
    case ErrorCode::kTooFewTrials:
    case ErrorCode::kTooManyWorkers:
      return kExitConfig;
    case ErrorCode::kIo:
    case ErrorCode::kEmptyDataset:
    case ErrorCode::kMalformedLine:
    case ErrorCode::kNonIntegerLabel:
    case ErrorCode::kBadShape:
    case ErrorCode::kNonFiniteFeature:
    case ErrorCode::kBadModel:
    case ErrorCode::kSingleClass:
    case ErrorCode::kNotAProbability:
    case ErrorCode::kRelevanceOutOfRange:
    case ErrorCode::kNoRecords:
      return kExitData;
    case ErrorCode::kNonFiniteMargin:
    case ErrorCode::kStaleEpoch:
    case ErrorCode::kRendezvousTimeout:
    case ErrorCode::kWorkerCrash:
      return kExitRuntime;
  }
  return kExitRuntime;
}

std::vector<std::string> PresetNames() {
  return {"xgb-grid", "lgbm-grid", "cat-grid", "xgb-hpo", "lgbm-hpo", "cat-hpo"};
}

bo::ParamSpace HpoSpace(orch::Profile profile) {
  using bo::Dimension;
  std::vector<Dimension> dims{Dimension::Integer("iterations", 16, 1000),
                              Dimension::Integer("max_depth", 2, 14),
                              Dimension::Continuous("lambda", 1e-2, 1e5, bo::Scale::kLog10),
                              Dimension::Continuous("learning_rate", 0.01, 1.0)};
  if (profile != orch::Profile::kCat) {
    dims.push_back(Dimension::Continuous("feature_fraction", 0.01, 1.0));
  }
  if (profile == orch::Profile::kLgbm) {
    dims.push_back(Dimension::Categorical("boosting", {"gbdt", "goss"}));
  }
  return bo::ParamSpace(std::move(dims));
}

void ApplyPreset(ExperimentConfig& config, const std::string& name) {
  if (config.profile || config.space) {
    throw Error(ErrorCode::kConfig, "preset '" + name + "' conflicts with an explicit " +
                                        (config.profile ? "profile" : "space"));
  }
  if (name.ends_with("-grid")) {
    config.profile = orch::ProfileFromName(name);
  } else if (name.ends_with("-hpo")) {
    config.space = HpoSpace(orch::ProfileFromName(name.substr(0, name.size() - 4)));
  } else {
    throw Error(ErrorCode::kConfig, "unknown preset '" + name + "'");
  }
}

ExperimentConfig ParseConfig(const json& doc, const fs::path& base_dir) {
  if (!doc.is_object()) throw Error(ErrorCode::kConfig, "config must be a JSON object");
  RejectUnknownKeys(doc,
                    {"dataset", "synthetic", "split", "metric", "profile", "space", "preset",
                     "hyperparams", "budget", "init_count", "repeats", "random_control",
                     "workers", "slots_per_host", "seed", "out"},
                    "config");
  ExperimentConfig c;
  if (doc.contains("dataset")) {
    const json& d = doc["dataset"];
    RejectUnknownKeys(d, {"train", "test", "task", "num_features"}, "dataset");
    if (!d.contains("train")) throw Error(ErrorCode::kConfig, "dataset.train is required");
    c.train_path = Resolve(base_dir, Get<std::string>(d, "train", ""));
    if (d.contains("test")) c.test_path = Resolve(base_dir, Get<std::string>(d, "test", ""));
    if (d.contains("task")) c.task = data::Task::Parse(Get<std::string>(d, "task", ""));
    if (d.contains("num_features")) c.num_features = Get<std::size_t>(d, "num_features", 0);
  }
  if (doc.contains("synthetic")) {
    const json& s = doc["synthetic"];
    RejectUnknownKeys(s, {"rows", "features", "task", "separation", "seed"}, "synthetic");
    SyntheticSpec spec;
    spec.rows = Get<std::size_t>(s, "rows", spec.rows);
    spec.features = Get<std::size_t>(s, "features", spec.features);
    if (s.contains("task")) spec.task = data::Task::Parse(Get<std::string>(s, "task", ""));
    spec.separation = Get<double>(s, "separation", spec.separation);
    spec.seed = Get<std::uint64_t>(s, "seed", spec.seed);
    c.synthetic = spec;
  }
  if (c.train_path.has_value() == c.synthetic.has_value()) {
    throw Error(ErrorCode::kConfig, "exactly one of 'dataset' and 'synthetic' is required");
  }
  if (doc.contains("split")) {
    const json& s = doc["split"];
    RejectUnknownKeys(s, {"validation_fraction", "seed"}, "split");
    c.validation_fraction = Get<double>(s, "validation_fraction", c.validation_fraction);
    c.split_seed = Get<std::uint64_t>(s, "seed", c.split_seed);
  }
  if (doc.contains("metric")) c.metric = metrics::MetricFromName(Get<std::string>(doc, "metric", ""));
  if (doc.contains("profile")) c.profile = orch::ProfileFromName(Get<std::string>(doc, "profile", ""));
  if (doc.contains("space")) c.space = bo::ParamSpace::FromJson(doc["space"]);
  if (c.profile && c.space) {
    throw Error(ErrorCode::kConfig, "set either a grid 'profile' or an HPO 'space', not both");
  }
  if (doc.contains("preset")) ApplyPreset(c, Get<std::string>(doc, "preset", ""));
  if (doc.contains("hyperparams")) {
    const json& h = doc["hyperparams"];
    if (!h.is_object()) throw Error(ErrorCode::kConfig, "'hyperparams' must be an object");
    c.hyperparams = h.get<gbdt::HyperParams>();
    c.hyperparams_seed_set = h.contains("seed");
    c.hyperparams_objective_set = h.contains("objective");
  }
  c.budget = Get<std::size_t>(doc, "budget", c.budget);
  c.init_count = Get<std::size_t>(doc, "init_count", c.init_count);
  c.repeats = Get<std::size_t>(doc, "repeats", c.repeats);
  c.random_control = Get<std::size_t>(doc, "random_control", c.random_control);
  c.workers = Get<std::size_t>(doc, "workers", c.workers);
  c.slots_per_host = Get<std::size_t>(doc, "slots_per_host", c.slots_per_host);
  c.seed = Get<std::uint64_t>(doc, "seed", c.seed);
  if (doc.contains("out")) c.out = Get<std::string>(doc, "out", "");
  if (c.workers == 0) throw Error(ErrorCode::kConfig, "workers must be >= 1");
  if (c.repeats == 0) throw Error(ErrorCode::kConfig, "repeats must be >= 1");
  return c;
}

ExperimentConfig LoadConfig(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kConfig, "cannot open config " + path.string());
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw Error(ErrorCode::kConfig, "config is not valid JSON");
  return ParseConfig(doc, path.parent_path());
}

void ApplyOverrides(ExperimentConfig& config, const Overrides& o) {
  if (o.seed) config.seed = *o.seed;
  if (o.workers) {
    if (*o.workers == 0) throw Error(ErrorCode::kConfig, "workers must be >= 1");
    config.workers = *o.workers;
  }
  if (o.slots_per_host) config.slots_per_host = *o.slots_per_host;
  if (o.out) config.out = *o.out;
  if (o.preset) ApplyPreset(config, *o.preset);
}

Splits LoadSplits(const ExperimentConfig& config) {
  data::LabeledDataset all;
  if (config.synthetic) {
    const SyntheticSpec& s = *config.synthetic;
    all = data::MakeSynthetic(s.rows, s.features, s.task, s.separation, s.seed);
  } else {
    data::SvmlightOptions opt;
    opt.task = config.task;
    opt.num_features = config.num_features;
    all = data::LoadSvmlight(config.train_path->string(), opt);
  }
  data::SplitResult split =
      data::StratifiedSplit(all, config.validation_fraction, config.split_seed);
  Splits out{std::move(split.train), std::move(split.holdout), std::nullopt};
  if (config.test_path) {
    data::SvmlightOptions opt;
    opt.task = out.train.task();
    opt.num_features = config.num_features;
    data::LabeledDataset test = data::LoadSvmlight(config.test_path->string(), opt);
    const std::size_t m = std::max(out.train.num_features(), test.num_features());
    if (out.train.num_features() < m) {
      out.train = out.train.WithNumFeatures(m);
      out.validation = out.validation.WithNumFeatures(m);
    }
    if (test.num_features() < m) test = test.WithNumFeatures(m);
    out.test = std::move(test);
  }
  return out;
}

metrics::Metric MetricFor(const ExperimentConfig& config, const data::LabeledDataset& data) {
  return config.metric.value_or(metrics::DefaultMetric(data));
}

json CmdTrain(const ExperimentConfig& config) {
  Metadata meta(config.out, "train");
  const Splits s = LoadSplits(config);
  const metrics::Metric metric = MetricFor(config, s.validation);
  const gbdt::HyperParams hp = BaseParams(config, s.train.task());
  const gbdt::TrainResult result = gbdt::Train(s.train, hp);
  result.ensemble.Save((config.out / "model.json").string());
  json report{{"hyperparams", hp},
              {"validation", ReportJson(Score(metric, result.ensemble, s.validation))}};
  if (s.test) report["test"] = ReportJson(Score(metric, result.ensemble, *s.test));
  WriteJson(config.out / "report.json", report);
  meta.Finish();
  return report;
}

json CmdEval(const ExperimentConfig& config, const fs::path& model_path) {
  Metadata meta(config.out, "eval");
  const gbdt::Ensemble model = gbdt::Ensemble::Load(model_path.string());
  const Splits s = LoadSplits(config);
  const data::LabeledDataset& target = s.test_or_validation();
  const data::LabeledDataset aligned = target.num_features() < model.num_features()
                                           ? target.WithNumFeatures(model.num_features())
                                           : target;
  json report{{"model", model_path.string()},
              {"split", s.test ? "test" : "validation"},
              {"report", ReportJson(Score(MetricFor(config, target), model, aligned))}};
  WriteJson(config.out / "eval.json", report);
  meta.Finish();
  return report;
}

json CmdBaseline(const ExperimentConfig& config) {
  Metadata meta(config.out, "baseline");
  const Splits s = LoadSplits(config);
  const data::LabeledDataset& target = s.test_or_validation();
  const metrics::Metric metric = MetricFor(config, target);
  const std::vector<double> freq = data::ClassFrequencies(s.train);
  const metrics::BaselinePrediction pred =
      metrics::BaselinePredict(freq, target.num_rows(), config.seed);
  std::vector<double> sampled(target.num_rows() * freq.size(), 0.0);
  for (std::size_t i = 0; i < target.num_rows(); ++i) {
    sampled[i * freq.size() + static_cast<std::size_t>(pred.sampled_labels[i])] = 1.0;
  }
  json report{{"class_frequencies", freq},
              {"split", s.test ? "test" : "validation"},
              {"frequency", ReportJson(metrics::Evaluate(metric, target, pred.probabilities))},
              {"sampled", ReportJson(metrics::Evaluate(metric, target, sampled))}};
  WriteJson(config.out / "baseline.json", report);
  meta.Finish();
  return report;
}

json CmdGrid(const ExperimentConfig& config) {
  if (!config.profile) throw Error(ErrorCode::kConfig, "grid requires a 'profile' or grid preset");
  Metadata meta(config.out, "grid");
  const Splits s = LoadSplits(config);
  const metrics::Metric metric = MetricFor(config, s.validation);
  const orch::Grid grid = orch::MakeGrid(*config.profile);

  orch::RunGridOptions opt;
  opt.workers = config.workers;
  opt.slots_per_host = config.slots_per_host;
  opt.seed = config.seed;
  opt.work_dir = config.out / "work";
  opt.base = BaseParams(config, s.train.task());
  opt.metric = metric;
  const orch::GridRunResult run = orch::RunGrid(grid, s.train, s.validation, opt);

  {
    std::ofstream csv(config.out / "grid_results.csv", std::ios::trunc);
    orch::WriteResultsCsv(csv, grid.names(), run.records);
  }
  const orch::Summary summary = orch::CollectResults(run.records);
  json report = orch::SummaryToJson(summary, grid.names());
  report["profile"] = orch::ProfileName(*config.profile);
  report["metric"] = metrics::MetricName(metric);
  report["grid_size"] = grid.size();
  report["retried_partitions"] = run.retried_partitions;
  if (summary.best_index) {
    gbdt::HyperParams hp = orch::ApplyAssignment(opt.base, grid.names(), summary.best_params);
    hp.seed = DeriveSeed(config.seed, {*summary.best_index});
    const gbdt::TrainResult best = gbdt::Train(s.train, hp);
    report["best_test_score"] = Score(metric, best.ensemble, s.test_or_validation()).value;
  }
  const metrics::BaselinePrediction base = metrics::BaselinePredict(
      data::ClassFrequencies(s.train), s.validation.num_rows(), config.seed);
  report["baseline_validation_score"] =
      metrics::Evaluate(metric, s.validation, base.probabilities).value;
  WriteJson(config.out / "grid_summary.json", report);
  meta.Finish();
  return report;
}

json CmdHpo(const ExperimentConfig& config) {
  if (!config.space) throw Error(ErrorCode::kConfig, "hpo requires a 'space' or HPO preset");
  if (config.init_count < 2 || config.budget < config.init_count) {
    throw Error(ErrorCode::kConfig, "hpo requires budget >= init_count >= 2");
  }
  Metadata meta(config.out, "hpo");
  const Splits s = LoadSplits(config);
  const metrics::Metric metric = MetricFor(config, s.validation);
  const bo::ParamSpace& space = *config.space;
  const std::vector<std::string> names = bo::ParamNames(space);
  const gbdt::HyperParams base = BaseParams(config, s.train.task());

  json runs = json::array();
  for (std::size_t r = 0; r < config.repeats; ++r) {
    const std::uint64_t seed = config.seed + r;
    auto objective = [&](const bo::Assignment& a) {
      gbdt::HyperParams hp = orch::ApplyAssignment(base, names, a);
      hp.seed = seed;
      return orch::TrainAndScore(s.train, s.validation, hp, metric);
    };
    const std::string stem = "hpo_trials_r" + std::to_string(r);
    bo::TrialLogWriter log(config.out / (stem + ".csv"), config.out / (stem + ".jsonl"), names);
    bo::HpoOptions opt;
    opt.on_trial = [&](const bo::TrialRecord& t) { log.Append(t); };
    const auto records = bo::RunHpo(space, objective, config.budget, config.init_count, seed, opt);

    const orch::Summary summary = orch::CollectResults(records);
    json run = orch::SummaryToJson(summary, names);
    run["seed"] = seed;
    run["trial_log"] = stem + ".csv";
    if (summary.best_index) {
      gbdt::HyperParams hp = orch::ApplyAssignment(base, names, summary.best_params);
      hp.seed = seed;
      const gbdt::TrainResult best = gbdt::Train(s.train, hp);
      run["best_test_score"] = Score(metric, best.ensemble, s.test_or_validation()).value;
    }
    if (config.random_control > 0) {
      const auto control = bo::RandomSearch(space, objective, config.random_control, seed);
      const orch::Summary cs = orch::CollectResults(control);
      run["random_control_best"] = cs.best_score ? json(*cs.best_score) : json();
    }
    runs.push_back(std::move(run));
  }
  json report{{"metric", metrics::MetricName(metric)},
              {"budget", config.budget},
              {"init_count", config.init_count},
              {"space", space.ToJson()},
              {"runs", runs}};
  WriteJson(config.out / "hpo_summary.json", report);
  meta.Finish();
  return report;
}

json CmdReportCurve(const fs::path& trial_log, const fs::path& out_dir) {
  Metadata meta(out_dir, "report-curve");
  const auto curve = bo::ComputeCurve(bo::ReadTrialCsv(trial_log));
  {
    std::ofstream out(out_dir / "curve.csv", std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write curve under " + out_dir.string());
    bo::WriteCurveCsv(out, curve);
  }
  json report{{"rows", curve.size()},
              {"total_seconds", curve.back().cumulative_seconds},
              {"best_score",
               curve.back().best_score_so_far ? json(*curve.back().best_score_so_far) : json()}};
  meta.Finish();
  return report;
}

}  // namespace boosthpo::cli
