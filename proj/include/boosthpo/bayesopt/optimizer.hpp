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

#ifndef BOOSTHPO_BAYESOPT_OPTIMIZER_HPP_
#define BOOSTHPO_BAYESOPT_OPTIMIZER_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "boosthpo/bayesopt/acquisition.hpp"
#include "boosthpo/bayesopt/gaussian_process.hpp"
#include "boosthpo/bayesopt/param_space.hpp"
#include "boosthpo/random.hpp"

namespace boosthpo::bo {

enum class TrialStatus { kOk, kFailed };

std::string_view TrialStatusName(TrialStatus status);
TrialStatus TrialStatusFromName(std::string_view name);

struct TrialRecord {
  std::size_t index = 0;
  Assignment params;
  std::optional<double> score;  // empty iff Failed
  double seconds = 0.0;
  TrialStatus status = TrialStatus::kOk;
  std::string message;
};

struct TrialOutcome {
  double score = 0.0;
  double seconds = 0.0;
};

// Exceptions thrown by the objective turn the trial into a Failed record.
using ObjectiveFn = std::function<TrialOutcome(const Assignment&)>;
using TrialCallback = std::function<void(const TrialRecord&)>;

inline constexpr std::size_t kDefaultInitCount = 8;
inline constexpr std::size_t kDefaultBudget = 150;

struct HpoOptions {
  GpFitOptions gp;
  SuggestOptions suggest;
  TrialCallback on_trial;
};

// Latin hypercube over dimensions (not encoded coordinates): each dimension's
// unit interval is split into `count` strata visited once; categorical
// dimensions map the stratum value onto a choice index.
std::vector<std::vector<double>> LatinHypercube(const ParamSpace& space, std::size_t count,
                                                Rng& rng);
std::vector<double> RandomPoint(const ParamSpace& space, Rng& rng);

// Runs exactly `budget` trials: `init_count` Latin hypercube points followed
// by sequential fit/suggest/evaluate rounds.
std::vector<TrialRecord> RunHpo(const ParamSpace& space, const ObjectiveFn& objective,
                                std::size_t budget, std::size_t init_count,
                                std::uint64_t seed, const HpoOptions& options = {});

// Uniform random search control.
std::vector<TrialRecord> RandomSearch(const ParamSpace& space, const ObjectiveFn& objective,
                                      std::size_t budget, std::uint64_t seed,
                                      const TrialCallback& on_trial = {});

// Running maximum over Ok trials; empty until the first Ok trial.
std::vector<std::optional<double>> BestSoFar(const std::vector<TrialRecord>& records);

}  // namespace boosthpo::bo

#endif  // BOOSTHPO_BAYESOPT_OPTIMIZER_HPP_
