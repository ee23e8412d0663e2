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

#include "boosthpo/bayesopt/acquisition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "boosthpo/error.hpp"

namespace boosthpo::bo {
namespace {

constexpr unsigned kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101,
                                103, 107, 109, 113, 127, 131};

double RadicalInverse(std::size_t index, unsigned base) {
  double result = 0.0;
  double f = 1.0 / base;
  while (index > 0) {
    result += f * static_cast<double>(index % base);
    index /= base;
    f /= base;
  }
  return result;
}

double Ei(const GaussianProcess& gp, const std::vector<double>& x, double best, double xi) {
  const Posterior p = gp.StandardizedPosterior(x);
  return ExpectedImprovement(p.mean, p.variance, best, xi);
}

}  // namespace

double NormalCdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double NormalPdf(double z) { return 0.3989422804014327 * std::exp(-0.5 * z * z); }

double ExpectedImprovement(double mean, double variance, double best_so_far, double xi) {
  const double delta = mean - best_so_far - xi;
  const double sigma = std::sqrt(std::max(variance, 0.0));
  if (!(sigma > 0.0)) return std::max(delta, 0.0);
  const double z = delta / sigma;
  return std::max(delta * NormalCdf(z) + sigma * NormalPdf(z), 0.0);
}

std::vector<double> Halton(std::size_t index, std::size_t dim) {
  constexpr std::size_t kNumPrimes = sizeof(kPrimes) / sizeof(kPrimes[0]);
  if (dim > kNumPrimes) {
    throw Error(ErrorCode::kInvalidArgument, "Halton sequence supports up to 32 dimensions");
  }
  std::vector<double> out(dim);
  for (std::size_t d = 0; d < dim; ++d) out[d] = RadicalInverse(index, kPrimes[d]);
  return out;
}

Suggestion SuggestNext(const GaussianProcess& gp, const ParamSpace& space, Rng& rng,
                       const SuggestOptions& options) {
  const std::size_t dim = gp.dim();
  if (space.encoded_size() != dim) {
    throw Error(ErrorCode::kInvalidArgument, "space does not match the fitted surrogate");
  }
  const double best = gp.best_standardized();

  std::vector<std::vector<double>> candidates;
  candidates.reserve(options.num_candidates + options.num_perturbed);
  std::vector<double> shift(dim);
  for (double& s : shift) s = UniformUnit(rng);
  for (std::size_t i = 1; i <= options.num_candidates; ++i) {
    std::vector<double> c = Halton(i, dim);
    for (std::size_t d = 0; d < dim; ++d) {
      c[d] += shift[d];
      if (c[d] >= 1.0) c[d] -= 1.0;
    }
    candidates.push_back(std::move(c));
  }

  const auto& x = gp.inputs();
  const auto& y = gp.standardized_targets();
  std::vector<std::size_t> order(gp.num_points());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return y(a) > y(b); });
  for (std::size_t k = 0; k < std::min(options.num_perturbed, order.size()); ++k) {
    std::vector<double> c(dim);
    for (std::size_t d = 0; d < dim; ++d) {
      c[d] = std::clamp(x(order[k], d) + options.perturb_sigma * StandardNormal(rng), 0.0, 1.0);
    }
    candidates.push_back(std::move(c));
  }

  std::size_t arg = 0;
  double arg_ei = -1.0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const double e = Ei(gp, candidates[i], best, options.xi);
    if (e > arg_ei) {
      arg_ei = e;
      arg = i;
    }
  }

  Suggestion out;
  if (!(arg_ei > 0.0)) {
    double max_var = -1.0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const double v = gp.StandardizedPosterior(candidates[i]).variance;
      if (v > max_var) {
        max_var = v;
        arg = i;
      }
    }
    out.point = candidates[arg];
    out.variance_fallback = true;
    return out;
  }

  std::vector<double> point = candidates[arg];
  double value = arg_ei;
  double step = options.local_step;
  for (int s = 0; s < options.local_steps; ++s) {
    std::vector<double> best_move;
    double best_move_value = value;
    for (std::size_t d = 0; d < dim; ++d) {
      for (double sign : {-1.0, 1.0}) {
        std::vector<double> trial = point;
        trial[d] = std::clamp(trial[d] + sign * step, 0.0, 1.0);
        if (trial[d] == point[d]) continue;
        const double e = Ei(gp, trial, best, options.xi);
        if (e > best_move_value) {
          best_move_value = e;
          best_move = std::move(trial);
        }
      }
    }
    if (best_move.empty()) {
      step *= 0.5;
    } else {
      point = std::move(best_move);
      value = best_move_value;
    }
  }
  out.point = std::move(point);
  out.ei = value;
  return out;
}

}  // namespace boosthpo::bo
