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

#ifndef BOOSTHPO_GBDT_ENSEMBLE_HPP_
#define BOOSTHPO_GBDT_ENSEMBLE_HPP_

#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "boosthpo/dataset.hpp"
#include "boosthpo/gbdt/objective.hpp"
#include "boosthpo/gbdt/tree.hpp"

namespace boosthpo::gbdt {

inline constexpr int kEnsembleFormatVersion = 1;

// A trained model. Immutable once built; safe for concurrent prediction.
class Ensemble {
 public:
  Ensemble() = default;
  Ensemble(Objective objective, std::size_t num_features,
           std::vector<double> base_margins,
           std::vector<std::vector<double>> boundaries,
           std::vector<std::vector<Tree>> trees_per_output);

  const Objective& objective() const { return objective_; }
  std::size_t num_features() const { return num_features_; }
  const std::vector<double>& base_margins() const { return base_margins_; }
  const std::vector<std::vector<double>>& boundaries() const { return boundaries_; }
  const std::vector<std::vector<Tree>>& trees() const { return trees_; }
  std::size_t num_iterations() const { return trees_.empty() ? 0 : trees_[0].size(); }

  // Row-major n x num_outputs.
  std::vector<double> PredictMargins(const data::LabeledDataset& dataset) const;
  std::vector<double> PredictMargins(std::span<const std::vector<double>> rows) const;
  // Row-major n x num_classes; rows sum to one.
  std::vector<double> PredictProba(const data::LabeledDataset& dataset) const;
  std::vector<double> PredictProba(std::span<const std::vector<double>> rows) const;

  nlohmann::json ToJson() const;
  static Ensemble FromJson(const nlohmann::json& doc);
  // Serialized text is a pure function of the model.
  std::string Serialize() const;
  void Save(const std::string& path) const;
  static Ensemble Load(const std::string& path);

  friend bool operator==(const Ensemble&, const Ensemble&) = default;

 private:
  Objective objective_;
  std::size_t num_features_ = 0;
  std::vector<double> base_margins_;
  std::vector<std::vector<double>> boundaries_;
  std::vector<std::vector<Tree>> trees_;
};

}  // namespace boosthpo::gbdt

#endif  // BOOSTHPO_GBDT_ENSEMBLE_HPP_
