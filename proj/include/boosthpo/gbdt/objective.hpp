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

#ifndef BOOSTHPO_GBDT_OBJECTIVE_HPP_
#define BOOSTHPO_GBDT_OBJECTIVE_HPP_

#include <span>
#include <string>
#include <vector>

#include "boosthpo/dataset.hpp"

namespace boosthpo::gbdt {

struct Objective {
  enum class Kind { kBinaryLogistic, kMulticlassSoftmax, kOneVsAll };

  Kind kind = Kind::kBinaryLogistic;
  int num_classes = 2;

  static Objective BinaryLogistic() { return {Kind::kBinaryLogistic, 2}; }
  static Objective MulticlassSoftmax(int c) { return {Kind::kMulticlassSoftmax, c}; }
  static Objective OneVsAll(int c) { return {Kind::kOneVsAll, c}; }
  // Binary task -> BinaryLogistic, multiclass -> softmax (or one-vs-all).
  static Objective ForTask(const data::Task& task, bool one_vs_all = false);

  // Number of margins (and trees per iteration) per row.
  int num_outputs() const {
    return kind == Kind::kBinaryLogistic ? 1 : num_classes;
  }
  bool Matches(const data::Task& task) const;

  // "binary_logistic", "multiclass_softmax", "one_vs_all".
  std::string Name() const;
  static Objective FromName(const std::string& name, int num_classes);

  friend bool operator==(const Objective&, const Objective&) = default;
};

struct GradientPair {
  double g = 0.0;
  double h = 0.0;
};

// `margins` is row-major (n x num_outputs). Returns gradients in the same
// layout. Throws NonFiniteMargin on NaN/inf margins.
std::vector<GradientPair> ComputeGradients(std::span<const double> margins,
                                           std::span<const int> labels,
                                           const Objective& objective);

// Initial margins from the class prior: log-odds for binary and one-vs-all,
// zeros for softmax.
std::vector<double> BaseMargins(std::span<const double> class_frequencies,
                                const Objective& objective);

// Maps a row-major margin matrix (n x num_outputs) to a row-major
// probability matrix (n x num_classes); every row sums to one.
std::vector<double> MarginsToProbabilities(std::span<const double> margins,
                                           const Objective& objective);

// Mean negative log-likelihood of the labels under the probabilities.
double LogLoss(std::span<const double> probabilities, std::span<const int> labels,
               int num_classes);

double Sigmoid(double x);

}  // namespace boosthpo::gbdt

#endif  // BOOSTHPO_GBDT_OBJECTIVE_HPP_
