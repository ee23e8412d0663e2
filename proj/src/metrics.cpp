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

#include "boosthpo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "boosthpo/error.hpp"
#include "boosthpo/random.hpp"

namespace boosthpo::metrics {

namespace {

constexpr double kProbabilityTolerance = 1e-6;

void CheckProbability(std::span<const double> p) {
  if (p.empty()) throw Error(ErrorCode::kNotAProbability, "empty probability vector");
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::kNotAProbability, "negative or non-finite probability");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kProbabilityTolerance) {
    throw Error(ErrorCode::kNotAProbability, "probabilities sum to " + std::to_string(sum));
  }
}

double DcgAtK(std::span<const int> relevance_in_rank_order, std::size_t cutoff) {
  double dcg = 0.0;
  const std::size_t k = std::min(cutoff, relevance_in_rank_order.size());
  for (std::size_t i = 0; i < k; ++i) {
    dcg += (std::exp2(relevance_in_rank_order[i]) - 1.0) / std::log2(static_cast<double>(i) + 2.0);
  }
  return dcg;
}

}  // namespace

double AucRoc(std::span<const int> labels, std::span<const double> scores) {
  if (labels.size() != scores.size()) {
    throw Error(ErrorCode::kInvalidArgument, "labels and scores differ in length");
  }
  double positives = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 0 && labels[i] != 1) {
      throw Error(ErrorCode::kInvalidArgument, "AUC labels must be 0 or 1");
    }
    if (std::isnan(scores[i])) throw Error(ErrorCode::kInvalidArgument, "NaN score");
    positives += labels[i];
  }
  const double negatives = static_cast<double>(labels.size()) - positives;
  if (positives == 0.0 || negatives == 0.0) {
    throw Error(ErrorCode::kSingleClass, "AUC needs both classes");
  }
  std::vector<std::size_t> order(labels.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  // Sum of (1-based, tie-averaged) ranks of the positives.
  double rank_sum = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    double group_pos = 0.0;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) group_pos += labels[order[j++]];
    const double mean_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    rank_sum += group_pos * mean_rank;
    i = j;
  }
  return (rank_sum - positives * (positives + 1.0) / 2.0) / (positives * negatives);
}

double ExpectedRelevance(std::span<const double> probabilities) {
  CheckProbability(probabilities);
  double e = 0.0;
  for (std::size_t k = 0; k < probabilities.size(); ++k) e += static_cast<double>(k) * probabilities[k];
  return e;
}

int ModeRelevance(std::span<const double> probabilities) {
  CheckProbability(probabilities);
  return static_cast<int>(std::max_element(probabilities.begin(), probabilities.end()) -
                          probabilities.begin());
}

NdcgResult Ndcg(std::span<const std::int64_t> query_ids, std::span<const int> true_relevance,
                std::span<const double> predicted_relevance, std::size_t cutoff) {
  if (query_ids.size() != true_relevance.size() ||
      query_ids.size() != predicted_relevance.size()) {
    throw Error(ErrorCode::kInvalidArgument, "NDCG inputs differ in length");
  }
  if (query_ids.empty()) throw Error(ErrorCode::kInvalidArgument, "NDCG needs at least one query");
  for (int rel : true_relevance) {
    if (rel < 0 || rel > kMaxRelevance) {
      throw Error(ErrorCode::kRelevanceOutOfRange,
                  "relevance " + std::to_string(rel) + " outside [0, 4]");
    }
  }
  std::unordered_map<std::int64_t, std::size_t> index;
  std::vector<std::vector<std::size_t>> queries;
  for (std::size_t i = 0; i < query_ids.size(); ++i) {
    auto [it, inserted] = index.try_emplace(query_ids[i], queries.size());
    if (inserted) queries.emplace_back();
    queries[it->second].push_back(i);
  }

  NdcgResult result;
  result.per_query.reserve(queries.size());
  std::vector<int> ranked;
  for (auto& rows : queries) {
    std::stable_sort(rows.begin(), rows.end(), [&](std::size_t a, std::size_t b) {
      return predicted_relevance[a] > predicted_relevance[b];
    });
    ranked.clear();
    for (std::size_t r : rows) ranked.push_back(true_relevance[r]);
    const double dcg = DcgAtK(ranked, cutoff);
    std::sort(ranked.begin(), ranked.end(), std::greater<>());
    const double ideal = DcgAtK(ranked, cutoff);
    result.per_query.push_back(ideal > 0.0 ? dcg / ideal : 0.0);
  }
  double sum = 0.0;
  for (double v : result.per_query) sum += v;
  result.mean = sum / static_cast<double>(result.per_query.size());
  return result;
}

double NdcgAt10(std::span<const std::int64_t> query_ids, std::span<const int> true_relevance,
                std::span<const double> predicted_relevance) {
  return Ndcg(query_ids, true_relevance, predicted_relevance, kNdcgCutoff).mean;
}

void to_json(nlohmann::json& j, const EvalReport& report) {
  j = nlohmann::json{{"metric", report.metric},
                     {"value", report.value},
                     {"n_evaluated", report.n_evaluated}};
}

void from_json(const nlohmann::json& j, EvalReport& report) {
  report.metric = j.at("metric").get<std::string>();
  report.value = j.at("value").get<double>();
  report.n_evaluated = j.at("n_evaluated").get<std::size_t>();
}

std::string MetricName(Metric metric) {
  switch (metric) {
    case Metric::kAuc: return "auc";
    case Metric::kNdcg10: return "ndcg@10";
    case Metric::kNdcg10Mode: return "ndcg@10-mode";
    case Metric::kNegLogLoss: return "neg_logloss";
  }
  return "unknown";
}

Metric MetricFromName(const std::string& name) {
  for (Metric m : {Metric::kAuc, Metric::kNdcg10, Metric::kNdcg10Mode, Metric::kNegLogLoss}) {
    if (MetricName(m) == name) return m;
  }
  throw Error(ErrorCode::kConfig, "unknown metric '" + name + "'");
}

Metric DefaultMetric(const data::LabeledDataset& dataset) {
  if (dataset.task().is_binary()) return Metric::kAuc;
  if (dataset.has_query_ids()) return Metric::kNdcg10;
  return Metric::kNegLogLoss;
}

EvalReport Evaluate(Metric metric, const data::LabeledDataset& dataset,
                    std::span<const double> probabilities) {
  const std::size_t n = dataset.num_rows();
  const auto c = static_cast<std::size_t>(dataset.num_classes());
  if (probabilities.size() != n * c) {
    throw Error(ErrorCode::kInvalidArgument, "probability matrix has the wrong shape");
  }
  EvalReport report;
  report.metric = MetricName(metric);
  report.n_evaluated = n;
  switch (metric) {
    case Metric::kAuc: {
      if (c != 2) throw Error(ErrorCode::kInvalidArgument, "AUC needs a binary task");
      std::vector<double> scores(n);
      for (std::size_t i = 0; i < n; ++i) scores[i] = probabilities[i * 2 + 1];
      report.value = AucRoc(dataset.labels(), scores);
      break;
    }
    case Metric::kNdcg10:
    case Metric::kNdcg10Mode: {
      if (!dataset.has_query_ids()) {
        throw Error(ErrorCode::kInvalidArgument, "NDCG needs query ids");
      }
      std::vector<double> predicted(n);
      for (std::size_t i = 0; i < n; ++i) {
        const auto row = probabilities.subspan(i * c, c);
        predicted[i] = metric == Metric::kNdcg10 ? ExpectedRelevance(row)
                                                 : static_cast<double>(ModeRelevance(row));
      }
      auto ndcg = Ndcg(dataset.query_ids(), dataset.labels(), predicted);
      report.value = ndcg.mean;
      report.per_query = std::move(ndcg.per_query);
      break;
    }
    case Metric::kNegLogLoss: {
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        total += std::log(std::max(probabilities[i * c + dataset.labels()[i]], 1e-15));
      }
      report.value = n == 0 ? 0.0 : total / static_cast<double>(n);
      break;
    }
  }
  return report;
}

BaselinePrediction BaselinePredict(std::span<const double> frequencies, std::size_t n,
                                   std::uint64_t seed) {
  CheckProbability(frequencies);
  const std::size_t c = frequencies.size();
  BaselinePrediction out;
  out.probabilities.reserve(n * c);
  for (std::size_t i = 0; i < n; ++i) {
    out.probabilities.insert(out.probabilities.end(), frequencies.begin(), frequencies.end());
  }
  Rng rng(DeriveSeed(seed, {0xba5e}));
  out.sampled_labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = UniformUnit(rng);
    double cumulative = 0.0;
    std::size_t k = 0;
    // Falls through to the last class with nonzero mass on rounding slack.
    std::size_t last_nonzero = 0;
    for (std::size_t j = 0; j < c; ++j) {
      if (frequencies[j] > 0.0) last_nonzero = j;
    }
    for (k = 0; k < c; ++k) {
      cumulative += frequencies[k];
      if (u < cumulative && frequencies[k] > 0.0) break;
    }
    out.sampled_labels.push_back(static_cast<int>(k < c ? k : last_nonzero));
  }
  return out;
}

}  // namespace boosthpo::metrics
