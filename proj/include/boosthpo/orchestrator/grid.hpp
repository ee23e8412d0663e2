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

#ifndef BOOSTHPO_ORCHESTRATOR_GRID_HPP_
#define BOOSTHPO_ORCHESTRATOR_GRID_HPP_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "boosthpo/bayesopt/param_space.hpp"
#include "boosthpo/gbdt/hyperparams.hpp"

namespace boosthpo::orch {

enum class Profile { kXgb, kLgbm, kCat };

std::string_view ProfileName(Profile profile);
// Accepts "xgb", "lgbm", "cat" with or without a "-grid" suffix.
Profile ProfileFromName(std::string_view name);

// Cartesian product of named axes, enumerated row-major (last axis fastest).
class Grid {
 public:
  Grid() = default;
  Grid(std::vector<std::string> names, std::vector<std::vector<bo::ParamValue>> axes);

  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::vector<bo::ParamValue>>& axes() const { return axes_; }
  std::size_t size() const;
  bo::Assignment At(std::size_t index) const;
  std::vector<bo::Assignment> Enumerate() const;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<bo::ParamValue>> axes_;
};

Grid MakeGrid(Profile profile);

// Overwrites the named fields of `base`. Recognized names: iterations,
// max_depth, lambda, learning_rate, feature_fraction, boosting. Throws Config
// on unknown names or mistyped values.
gbdt::HyperParams ApplyAssignment(gbdt::HyperParams base, const std::vector<std::string>& names,
                                  const bo::Assignment& assignment);

std::vector<gbdt::HyperParams> EnumerateGrid(Profile profile, const gbdt::HyperParams& base = {});

// Contiguous [begin, end) ranges; sizes differ by at most one and earlier
// partitions take the remainder. Empty partitions are omitted.
std::vector<std::pair<std::size_t, std::size_t>> Partition(std::size_t count,
                                                           std::size_t parts);

}  // namespace boosthpo::orch

#endif  // BOOSTHPO_ORCHESTRATOR_GRID_HPP_
