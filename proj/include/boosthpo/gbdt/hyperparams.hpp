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

#ifndef BOOSTHPO_GBDT_HYPERPARAMS_HPP_
#define BOOSTHPO_GBDT_HYPERPARAMS_HPP_

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "boosthpo/gbdt/objective.hpp"

namespace boosthpo::gbdt {

inline constexpr double kDefaultGossTopRate = 0.2;
inline constexpr double kDefaultGossOtherRate = 0.1;
inline constexpr double kDefaultMinChildHessian = 1e-3;
inline constexpr int kDefaultNumBins = 256;
inline constexpr int kMaxDepth = 32;

struct Boosting {
  enum class Mode { kGbdt, kGoss };

  Mode mode = Mode::kGbdt;
  double top_rate = kDefaultGossTopRate;
  double other_rate = kDefaultGossOtherRate;

  static Boosting Gbdt() { return {}; }
  static Boosting Goss(double top = kDefaultGossTopRate,
                       double other = kDefaultGossOtherRate) {
    return {Mode::kGoss, top, other};
  }
  bool is_goss() const { return mode == Mode::kGoss; }
  std::string Name() const { return is_goss() ? "goss" : "gbdt"; }

  friend bool operator==(const Boosting&, const Boosting&) = default;
};

struct HyperParams {
  int iterations = 100;
  int max_depth = 6;
  double lambda = 1.0;
  double learning_rate = 0.1;
  double feature_fraction = 1.0;
  Boosting boosting;
  int num_bins = kDefaultNumBins;
  Objective objective;
  std::uint64_t seed = 0;
  double min_child_hessian = kDefaultMinChildHessian;

  // Throws InvalidArgument (BadRates for goss rates) on violated ranges.
  void Validate() const;

  friend bool operator==(const HyperParams&, const HyperParams&) = default;
};

void to_json(nlohmann::json& j, const HyperParams& hp);
// Missing keys keep their defaults; `objective` may be overridden later by
// the dataset's task.
void from_json(const nlohmann::json& j, HyperParams& hp);

}  // namespace boosthpo::gbdt

#endif  // BOOSTHPO_GBDT_HYPERPARAMS_HPP_
