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

#ifndef BOOSTHPO_BAYESOPT_GAUSSIAN_PROCESS_HPP_
#define BOOSTHPO_BAYESOPT_GAUSSIAN_PROCESS_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

namespace boosthpo::bo {

inline constexpr double kDefaultNoiseFloor = 1e-8;

double Matern52(const std::vector<double>& x, const std::vector<double>& y,
                const std::vector<double>& lengthscales, double signal_variance);
// Kernel as a function of the scaled distance r.
double Matern52FromDistance(double r, double signal_variance);

struct KernelParams {
  std::vector<double> lengthscales;
  double signal_variance = 1.0;
  double noise_variance = kDefaultNoiseFloor;
};

struct GpFitOptions {
  double noise_floor = kDefaultNoiseFloor;
  // When false the noise variance stays at the floor.
  bool fit_noise = true;
  int restarts = 8;
  int max_evals_per_start = 200;
  double min_lengthscale = 0.01;
  double max_lengthscale = 10.0;
  double min_signal_variance = 0.05;
  double max_signal_variance = 20.0;
  double max_noise_variance = 1.0;
  // Skips the likelihood search entirely.
  std::optional<KernelParams> fixed;
};

struct Posterior {
  double mean = 0.0;
  double variance = 0.0;
};

class GaussianProcess {
 public:
  // Rows of `inputs` live in [0,1]^D; `targets` are raw scores.
  // Throws TooFewTrials with fewer than two points.
  static GaussianProcess Fit(const std::vector<std::vector<double>>& inputs,
                             const std::vector<double>& targets,
                             const GpFitOptions& options = {});

  std::size_t num_points() const { return static_cast<std::size_t>(x_.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(x_.cols()); }
  const KernelParams& params() const { return params_; }
  double target_mean() const { return mean_; }
  double target_std() const { return std_; }
  bool degenerate() const { return degenerate_; }
  double jitter() const { return jitter_; }
  double log_marginal_likelihood() const { return lml_; }
  const Eigen::MatrixXd& inputs() const { return x_; }
  const Eigen::VectorXd& standardized_targets() const { return y_; }
  Eigen::MatrixXd cholesky_factor() const { return llt_.matrixL(); }
  Eigen::MatrixXd gram() const;

  // In standardized units.
  Posterior StandardizedPosterior(const std::vector<double>& x) const;
  // De-standardized to score units.
  Posterior Predict(const std::vector<double>& x) const;
  double best_standardized() const { return y_.size() ? y_.maxCoeff() : 0.0; }

 private:
  Eigen::MatrixXd x_;
  Eigen::VectorXd y_;
  double mean_ = 0.0;
  double std_ = 1.0;
  bool degenerate_ = false;
  KernelParams params_;
  double jitter_ = 0.0;
  double lml_ = 0.0;
  Eigen::LLT<Eigen::MatrixXd> llt_;
  Eigen::VectorXd alpha_;
};

}  // namespace boosthpo::bo

#endif  // BOOSTHPO_BAYESOPT_GAUSSIAN_PROCESS_HPP_
