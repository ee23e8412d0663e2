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

#ifndef BOOSTHPO_METRICS_HPP_
#define BOOSTHPO_METRICS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "boosthpo/dataset.hpp"

namespace boosthpo::metrics {

inline constexpr int kMaxRelevance = 4;
inline constexpr std::size_t kNdcgCutoff = 10;

// Probability that a random positive outranks a random negative, ties
// counted one half. Labels are 0/1. Throws SingleClass when one class is
// absent.
double AucRoc(std::span<const int> labels, std::span<const double> scores);

// Sum_k k * p_k over a probability vector indexed by relevance grade.
double ExpectedRelevance(std::span<const double> probabilities);
// argmax_k p_k, lowest index on ties.
int ModeRelevance(std::span<const double> probabilities);

struct NdcgResult {
  double mean = 0.0;
  // In order of each query's first row.
  std::vector<double> per_query;
};

// Mean over queries of DCG@cutoff / ideal DCG@cutoff with gain 2^rel - 1 and
// discount 1 / log2(rank + 1). Predictions tie-break by row order; queries
// whose ideal DCG is 0 score 0.
NdcgResult Ndcg(std::span<const std::int64_t> query_ids,
                std::span<const int> true_relevance,
                std::span<const double> predicted_relevance,
                std::size_t cutoff = kNdcgCutoff);

double NdcgAt10(std::span<const std::int64_t> query_ids,
                std::span<const int> true_relevance,
                std::span<const double> predicted_relevance);

struct EvalReport {
  std::string metric;
  double value = 0.0;
  std::optional<std::vector<double>> per_query;
  std::size_t n_evaluated = 0;
};

// {"metric", "value", "n_evaluated"}.
void to_json(nlohmann::json& j, const EvalReport& report);
void from_json(const nlohmann::json& j, EvalReport& report);

enum class Metric { kAuc, kNdcg10, kNdcg10Mode, kNegLogLoss };

std::string MetricName(Metric metric);
Metric MetricFromName(const std::string& name);
// AUC for binary tasks, NDCG-10 for multiclass tasks with query ids,
// negated log-loss otherwise. Higher is better for all of them.
Metric DefaultMetric(const data::LabeledDataset& dataset);

// Scores row-major probabilities (n x num_classes) against the dataset.
EvalReport Evaluate(Metric metric, const data::LabeledDataset& dataset,
                    std::span<const double> probabilities);

struct BaselinePrediction {
  // Row-major n x C; every row equals the class frequencies.
  std::vector<double> probabilities;
  std::vector<int> sampled_labels;
};

// Frequency classifier: constant class probabilities plus labels drawn
// from them. Throws NotAProbability on an invalid frequency vector.
BaselinePrediction BaselinePredict(std::span<const double> frequencies, std::size_t n,
                                   std::uint64_t seed);

}  // namespace boosthpo::metrics

#endif  // BOOSTHPO_METRICS_HPP_
