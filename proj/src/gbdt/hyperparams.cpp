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

#include "boosthpo/gbdt/hyperparams.hpp"

#include <cmath>

#include "boosthpo/error.hpp"
#include "boosthpo/gbdt/goss.hpp"

namespace boosthpo::gbdt {

void HyperParams::Validate() const {
  auto bad = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidArgument, what);
  };
  if (iterations < 0) bad("iterations must be >= 0");
  if (max_depth < 0 || max_depth > kMaxDepth) bad("max_depth must lie in [0, 32]");
  if (!(lambda >= 0.0)) bad("lambda must be >= 0");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    bad("learning_rate must be > 0");
  }
  if (!(feature_fraction > 0.0 && feature_fraction <= 1.0)) {
    bad("feature_fraction must lie in (0, 1]");
  }
  if (num_bins < 2 || num_bins > 65535) bad("num_bins must lie in [2, 65535]");
  if (!(min_child_hessian >= 0.0)) bad("min_child_hessian must be >= 0");
  if (objective.num_classes < 2) bad("objective needs >= 2 classes");
  if (boosting.is_goss()) {
    if (!GossRatesValid(boosting.top_rate, boosting.other_rate)) {
      throw Error(ErrorCode::kBadRates, "goss rates need a >= 0, b > 0, a + b <= 1");
    }
  }
}

void to_json(nlohmann::json& j, const HyperParams& hp) {
  j = nlohmann::json{
      {"iterations", hp.iterations},
      {"max_depth", hp.max_depth},
      {"lambda", hp.lambda},
      {"learning_rate", hp.learning_rate},
      {"feature_fraction", hp.feature_fraction},
      {"boosting", hp.boosting.Name()},
      {"num_bins", hp.num_bins},
      {"objective", hp.objective.Name()},
      {"num_classes", hp.objective.num_classes},
      {"seed", hp.seed},
      {"min_child_hessian", hp.min_child_hessian},
  };
  if (hp.boosting.is_goss()) {
    j["goss_top_rate"] = hp.boosting.top_rate;
    j["goss_other_rate"] = hp.boosting.other_rate;
  }
}

void from_json(const nlohmann::json& j, HyperParams& hp) {
  try {
    hp.iterations = j.value("iterations", hp.iterations);
    hp.max_depth = j.value("max_depth", hp.max_depth);
    hp.lambda = j.value("lambda", hp.lambda);
    hp.learning_rate = j.value("learning_rate", hp.learning_rate);
    hp.feature_fraction = j.value("feature_fraction", hp.feature_fraction);
    hp.num_bins = j.value("num_bins", hp.num_bins);
    hp.seed = j.value("seed", hp.seed);
    hp.min_child_hessian = j.value("min_child_hessian", hp.min_child_hessian);
    const std::string boosting = j.value("boosting", hp.boosting.Name());
    if (boosting == "gbdt") {
      hp.boosting = Boosting::Gbdt();
    } else if (boosting == "goss") {
      hp.boosting = Boosting::Goss(j.value("goss_top_rate", kDefaultGossTopRate),
                                   j.value("goss_other_rate", kDefaultGossOtherRate));
    } else {
      throw Error(ErrorCode::kConfig, "unknown boosting '" + boosting + "'");
    }
    if (j.contains("objective")) {
      hp.objective = Objective::FromName(
          j.at("objective").get<std::string>(),
          j.value("num_classes", hp.objective.num_classes));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfig, std::string("hyper-parameters: ") + e.what());
  }
}

}  // namespace boosthpo::gbdt
