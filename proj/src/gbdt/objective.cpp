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

#include "boosthpo/gbdt/objective.hpp"

#include <algorithm>
#include <cmath>

#include "boosthpo/error.hpp"

namespace boosthpo::gbdt {

namespace {

constexpr double kProbFloor = 1e-15;

void CheckFinite(std::span<const double> margins) {
  for (double m : margins) {
    if (!std::isfinite(m)) throw Error(ErrorCode::kNonFiniteMargin, "margin is not finite");
  }
}

}  // namespace

Objective Objective::ForTask(const data::Task& task, bool one_vs_all) {
  if (task.is_binary()) return BinaryLogistic();
  return one_vs_all ? OneVsAll(task.num_classes) : MulticlassSoftmax(task.num_classes);
}

bool Objective::Matches(const data::Task& task) const {
  if (kind == Kind::kBinaryLogistic) return task.is_binary();
  return !task.is_binary() && task.num_classes == num_classes;
}

std::string Objective::Name() const {
  switch (kind) {
    case Kind::kBinaryLogistic: return "binary_logistic";
    case Kind::kMulticlassSoftmax: return "multiclass_softmax";
    case Kind::kOneVsAll: return "one_vs_all";
  }
  return "unknown";
}

Objective Objective::FromName(const std::string& name, int num_classes) {
  if (name == "binary_logistic") return BinaryLogistic();
  if (num_classes < 2) throw Error(ErrorCode::kConfig, "objective needs >= 2 classes");
  if (name == "multiclass_softmax") return MulticlassSoftmax(num_classes);
  if (name == "one_vs_all") return OneVsAll(num_classes);
  throw Error(ErrorCode::kConfig, "unknown objective '" + name + "'");
}

double Sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

std::vector<GradientPair> ComputeGradients(std::span<const double> margins,
                                           std::span<const int> labels,
                                           const Objective& objective) {
  CheckFinite(margins);
  const auto k_out = static_cast<std::size_t>(objective.num_outputs());
  const std::size_t n = labels.size();
  if (margins.size() != n * k_out) {
    throw Error(ErrorCode::kInvalidArgument, "margin matrix has the wrong shape");
  }
  std::vector<GradientPair> grads(n * k_out);
  switch (objective.kind) {
    case Objective::Kind::kBinaryLogistic:
      for (std::size_t i = 0; i < n; ++i) {
        const double p = Sigmoid(margins[i]);
        grads[i] = {p - static_cast<double>(labels[i]), p * (1.0 - p)};
      }
      break;
    case Objective::Kind::kOneVsAll:
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < k_out; ++k) {
          const double p = Sigmoid(margins[i * k_out + k]);
          const double y = labels[i] == static_cast<int>(k) ? 1.0 : 0.0;
          grads[i * k_out + k] = {p - y, p * (1.0 - p)};
        }
      }
      break;
    case Objective::Kind::kMulticlassSoftmax: {
      std::vector<double> p(k_out);
      for (std::size_t i = 0; i < n; ++i) {
        const double* row = margins.data() + i * k_out;
        const double mx = *std::max_element(row, row + k_out);
        double z = 0.0;
        for (std::size_t k = 0; k < k_out; ++k) z += (p[k] = std::exp(row[k] - mx));
        for (std::size_t k = 0; k < k_out; ++k) {
          const double pk = p[k] / z;
          const double y = labels[i] == static_cast<int>(k) ? 1.0 : 0.0;
          grads[i * k_out + k] = {pk - y, pk * (1.0 - pk)};
        }
      }
      break;
    }
  }
  return grads;
}

std::vector<double> BaseMargins(std::span<const double> class_frequencies,
                                const Objective& objective) {
  auto log_odds = [](double p) {
    p = std::clamp(p, kProbFloor, 1.0 - kProbFloor);
    return std::log(p / (1.0 - p));
  };
  switch (objective.kind) {
    case Objective::Kind::kBinaryLogistic:
      return {log_odds(class_frequencies[1])};
    case Objective::Kind::kOneVsAll: {
      std::vector<double> out;
      for (double p : class_frequencies) out.push_back(log_odds(p));
      return out;
    }
    case Objective::Kind::kMulticlassSoftmax:
      return std::vector<double>(objective.num_classes, 0.0);
  }
  return {};
}

std::vector<double> MarginsToProbabilities(std::span<const double> margins,
                                           const Objective& objective) {
  const auto k_out = static_cast<std::size_t>(objective.num_outputs());
  const auto c = static_cast<std::size_t>(objective.num_classes);
  const std::size_t n = margins.size() / k_out;
  std::vector<double> probs(n * c);
  for (std::size_t i = 0; i < n; ++i) {
    const double* m = margins.data() + i * k_out;
    double* p = probs.data() + i * c;
    switch (objective.kind) {
      case Objective::Kind::kBinaryLogistic:
        p[1] = Sigmoid(m[0]);
        p[0] = 1.0 - p[1];
        break;
      case Objective::Kind::kMulticlassSoftmax: {
        const double mx = *std::max_element(m, m + c);
        double z = 0.0;
        for (std::size_t k = 0; k < c; ++k) z += (p[k] = std::exp(m[k] - mx));
        for (std::size_t k = 0; k < c; ++k) p[k] /= z;
        break;
      }
      case Objective::Kind::kOneVsAll: {
        double z = 0.0;
        for (std::size_t k = 0; k < c; ++k) z += (p[k] = Sigmoid(m[k]));
        if (z > 0.0) {
          for (std::size_t k = 0; k < c; ++k) p[k] /= z;
        } else {
          std::fill(p, p + c, 1.0 / static_cast<double>(c));
        }
        break;
      }
    }
  }
  return probs;
}

double LogLoss(std::span<const double> probabilities, std::span<const int> labels,
               int num_classes) {
  double total = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double p = probabilities[i * num_classes + labels[i]];
    total -= std::log(std::max(p, kProbFloor));
  }
  return labels.empty() ? 0.0 : total / static_cast<double>(labels.size());
}

}  // namespace boosthpo::gbdt
