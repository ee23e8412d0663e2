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

#ifndef BOOSTHPO_BAYESOPT_ACQUISITION_HPP_
#define BOOSTHPO_BAYESOPT_ACQUISITION_HPP_

#include <vector>

#include "boosthpo/bayesopt/gaussian_process.hpp"
#include "boosthpo/bayesopt/param_space.hpp"
#include "boosthpo/random.hpp"

namespace boosthpo::bo {

inline constexpr double kDefaultXi = 0.01;

// Maximization convention; never negative.
double ExpectedImprovement(double mean, double variance, double best_so_far, double xi);

double NormalCdf(double z);
double NormalPdf(double z);

// Point `index` of the Halton sequence in `dim` dimensions (index >= 1).
std::vector<double> Halton(std::size_t index, std::size_t dim);

struct SuggestOptions {
  std::size_t num_candidates = 2048;
  std::size_t num_perturbed = 10;
  double perturb_sigma = 0.05;
  int local_steps = 32;
  double local_step = 0.05;
  // In standardized target units, so that rescaling scores cannot move the
  // argmax.
  double xi = kDefaultXi;
};

struct Suggestion {
  std::vector<double> point;
  double ei = 0.0;
  // True when every candidate had zero EI and the maximal-variance candidate
  // was returned instead.
  bool variance_fallback = false;
};

Suggestion SuggestNext(const GaussianProcess& gp, const ParamSpace& space, Rng& rng,
                       const SuggestOptions& options = {});

}  // namespace boosthpo::bo

#endif  // BOOSTHPO_BAYESOPT_ACQUISITION_HPP_
