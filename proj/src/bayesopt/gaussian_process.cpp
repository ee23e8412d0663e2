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

#include "boosthpo/bayesopt/gaussian_process.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "boosthpo/error.hpp"
#include "boosthpo/random.hpp"

namespace boosthpo::bo {
namespace {

constexpr double kSqrt5 = 2.23606797749979;
constexpr double kLog2Pi = 1.8378770664093453;

struct Factorization {
  Eigen::LLT<Eigen::MatrixXd> llt;
  double jitter = 0.0;
  bool ok = false;
};

Eigen::MatrixXd KernelMatrix(const Eigen::MatrixXd& x, const KernelParams& p) {
  const Eigen::Index n = x.rows();
  Eigen::MatrixXd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    k(i, i) = p.signal_variance;
    for (Eigen::Index j = 0; j < i; ++j) {
      double r2 = 0.0;
      for (Eigen::Index d = 0; d < x.cols(); ++d) {
        const double t = (x(i, d) - x(j, d)) / p.lengthscales[d];
        r2 += t * t;
      }
      k(i, j) = k(j, i) = Matern52FromDistance(std::sqrt(r2), p.signal_variance);
    }
  }
  return k;
}

Factorization Factorize(const Eigen::MatrixXd& kernel, double noise) {
  Factorization f;
  double jitter = 0.0;
  const double scale = std::max(kernel.diagonal().maxCoeff(), 1e-300);
  for (int attempt = 0; attempt < 12; ++attempt) {
    Eigen::MatrixXd a = kernel;
    a.diagonal().array() += noise + jitter;
    f.llt.compute(a);
    if (f.llt.info() == Eigen::Success && f.llt.matrixLLT().diagonal().minCoeff() > 0.0) {
      f.jitter = jitter;
      f.ok = true;
      return f;
    }
    jitter = jitter == 0.0 ? 1e-10 * scale : jitter * 10.0;
  }
  return f;
}

double LogMarginal(const Factorization& f, const Eigen::VectorXd& y) {
  const Eigen::VectorXd alpha = f.llt.solve(y);
  const double log_det = 2.0 * f.llt.matrixLLT().diagonal().array().log().sum();
  return -0.5 * y.dot(alpha) - 0.5 * log_det - 0.5 * static_cast<double>(y.size()) * kLog2Pi;
}

// Log-space box used by the likelihood search.
struct Box {
  std::vector<double> lo, hi;
};

KernelParams Unpack(const std::vector<double>& theta, std::size_t dim, bool fit_noise,
                    double floor) {
  KernelParams p;
  p.lengthscales.resize(dim);
  for (std::size_t d = 0; d < dim; ++d) p.lengthscales[d] = std::exp(theta[d]);
  p.signal_variance = std::exp(theta[dim]);
  p.noise_variance = fit_noise ? std::max(std::exp(theta[dim + 1]), floor) : floor;
  return p;
}

void Clamp(std::vector<double>& theta, const Box& box) {
  for (std::size_t i = 0; i < theta.size(); ++i) {
    theta[i] = std::clamp(theta[i], box.lo[i], box.hi[i]);
  }
}

template <typename F>
std::pair<std::vector<double>, double> NelderMead(F&& f, std::vector<double> start,
                                                  const Box& box, int max_evals) {
  const std::size_t k = start.size();
  std::vector<std::vector<double>> simplex(k + 1, start);
  std::vector<double> values(k + 1);
  Clamp(simplex[0], box);
  for (std::size_t i = 0; i < k; ++i) {
    const double span = box.hi[i] - box.lo[i];
    double step = 0.15 * span;
    if (simplex[i + 1][i] + step > box.hi[i]) step = -step;
    simplex[i + 1][i] += step;
    Clamp(simplex[i + 1], box);
  }
  int evals = 0;
  auto eval = [&](std::vector<double>& p) {
    Clamp(p, box);
    ++evals;
    return f(p);
  };
  for (std::size_t i = 0; i <= k; ++i) values[i] = eval(simplex[i]);

  std::vector<std::size_t> order(k + 1);
  while (evals < max_evals) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[k - 1];
    if (std::abs(values[worst] - values[best]) < 1e-10) break;

    std::vector<double> centroid(k, 0.0);
    for (std::size_t i : order) {
      if (i == worst) continue;
      for (std::size_t d = 0; d < k; ++d) centroid[d] += simplex[i][d] / static_cast<double>(k);
    }
    auto along = [&](double t) {
      std::vector<double> p(k);
      for (std::size_t d = 0; d < k; ++d) p[d] = centroid[d] + t * (simplex[worst][d] - centroid[d]);
      return p;
    };
    std::vector<double> reflected = along(-1.0);
    const double fr = eval(reflected);
    if (fr < values[best]) {
      std::vector<double> expanded = along(-2.0);
      const double fe = eval(expanded);
      if (fe < fr) {
        simplex[worst] = std::move(expanded);
        values[worst] = fe;
      } else {
        simplex[worst] = std::move(reflected);
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second]) {
      simplex[worst] = std::move(reflected);
      values[worst] = fr;
      continue;
    }
    std::vector<double> contracted = fr < values[worst] ? along(-0.5) : along(0.5);
    const double fc = eval(contracted);
    if (fc < std::min(fr, values[worst])) {
      simplex[worst] = std::move(contracted);
      values[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= k; ++i) {
      if (i == best) continue;
      for (std::size_t d = 0; d < k; ++d) {
        simplex[i][d] = simplex[best][d] + 0.5 * (simplex[i][d] - simplex[best][d]);
      }
      values[i] = eval(simplex[i]);
    }
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i <= k; ++i) {
    if (values[i] < values[best]) best = i;
  }
  return {simplex[best], values[best]};
}

std::uint64_t HashData(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  std::uint64_t h = MixBits(static_cast<std::uint64_t>(x.rows()) * 31 + x.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index d = 0; d < x.cols(); ++d) h = MixBits(h ^ std::bit_cast<std::uint64_t>(x(i, d)));
    h = MixBits(h ^ std::bit_cast<std::uint64_t>(y(i)));
  }
  return h;
}

}  // namespace

double Matern52FromDistance(double r, double signal_variance) {
  const double s = kSqrt5 * r;
  return signal_variance * (1.0 + s + s * s / 3.0) * std::exp(-s);
}

double Matern52(const std::vector<double>& x, const std::vector<double>& y,
                const std::vector<double>& lengthscales, double signal_variance) {
  if (x.size() != y.size() || x.size() != lengthscales.size()) {
    throw Error(ErrorCode::kInvalidArgument, "matern52: dimension mismatch");
  }
  double r2 = 0.0;
  for (std::size_t d = 0; d < x.size(); ++d) {
    const double t = (x[d] - y[d]) / lengthscales[d];
    r2 += t * t;
  }
  return Matern52FromDistance(std::sqrt(r2), signal_variance);
}

GaussianProcess GaussianProcess::Fit(const std::vector<std::vector<double>>& inputs,
                                     const std::vector<double>& targets,
                                     const GpFitOptions& options) {
  const std::size_t n = inputs.size();
  if (n < 2 || targets.size() != n) {
    throw Error(ErrorCode::kTooFewTrials, "a Gaussian process needs at least 2 observations");
  }
  const std::size_t dim = inputs[0].size();
  if (dim == 0) throw Error(ErrorCode::kInvalidArgument, "empty input dimension");
  for (const auto& row : inputs) {
    if (row.size() != dim) throw Error(ErrorCode::kInvalidArgument, "ragged design matrix");
  }
  for (double t : targets) {
    if (!std::isfinite(t)) throw Error(ErrorCode::kInvalidArgument, "non-finite target");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (inputs[a] != inputs[b]) return inputs[a] < inputs[b];
    return targets[a] < targets[b];
  });

  GaussianProcess gp;
  gp.x_.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));
  gp.y_.resize(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 0; d < dim; ++d) gp.x_(i, d) = inputs[order[i]][d];
    gp.y_(i) = targets[order[i]];
  }
  gp.mean_ = gp.y_.mean();
  const double var = (gp.y_.array() - gp.mean_).square().sum() / static_cast<double>(n);
  gp.std_ = std::sqrt(var);
  if (!(gp.std_ > 1e-12 * std::max(1.0, std::abs(gp.mean_)))) {
    gp.degenerate_ = true;
    gp.std_ = 1.0;
  }
  gp.y_ = (gp.y_.array() - gp.mean_) / gp.std_;

  const double floor = options.noise_floor;
  if (options.fixed) {
    gp.params_ = *options.fixed;
    if (gp.params_.lengthscales.size() != dim) {
      throw Error(ErrorCode::kInvalidArgument, "fixed kernel has wrong lengthscale count");
    }
    gp.params_.noise_variance = std::max(gp.params_.noise_variance, floor);
  } else if (gp.degenerate_) {
    gp.params_.lengthscales.assign(dim, 0.5);
    gp.params_.signal_variance = 1.0;
    gp.params_.noise_variance = floor;
  } else {
    Box box;
    for (std::size_t d = 0; d < dim; ++d) {
      box.lo.push_back(std::log(options.min_lengthscale));
      box.hi.push_back(std::log(options.max_lengthscale));
    }
    box.lo.push_back(std::log(options.min_signal_variance));
    box.hi.push_back(std::log(options.max_signal_variance));
    if (options.fit_noise) {
      box.lo.push_back(std::log(floor));
      box.hi.push_back(std::log(std::max(options.max_noise_variance, floor * 10.0)));
    }
    auto negative_lml = [&](const std::vector<double>& theta) {
      const KernelParams p = Unpack(theta, dim, options.fit_noise, floor);
      const Factorization f = Factorize(KernelMatrix(gp.x_, p), p.noise_variance);
      if (!f.ok) return std::numeric_limits<double>::infinity();
      const double v = -LogMarginal(f, gp.y_);
      return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    };

    Rng rng(HashData(gp.x_, gp.y_));
    std::vector<double> best_theta;
    double best_value = std::numeric_limits<double>::infinity();
    for (int s = 0; s < std::max(1, options.restarts); ++s) {
      std::vector<double> start(box.lo.size());
      if (s == 0) {
        for (std::size_t d = 0; d < dim; ++d) start[d] = std::log(0.3);
        start[dim] = 0.0;
        if (options.fit_noise) start[dim + 1] = std::log(std::max(1e-3, floor));
      } else {
        for (std::size_t i = 0; i < start.size(); ++i) {
          start[i] = box.lo[i] + UniformUnit(rng) * (box.hi[i] - box.lo[i]);
        }
      }
      auto [theta, value] = NelderMead(negative_lml, start, box, options.max_evals_per_start);
      if (best_theta.empty() || value < best_value) {
        best_theta = theta;
        best_value = value;
      }
    }
    gp.params_ = Unpack(best_theta, dim, options.fit_noise, floor);
  }

  Factorization f = Factorize(KernelMatrix(gp.x_, gp.params_), gp.params_.noise_variance);
  if (!f.ok) throw Error(ErrorCode::kInvalidArgument, "Gram matrix factorization failed");
  gp.llt_ = std::move(f.llt);
  gp.jitter_ = f.jitter;
  gp.alpha_ = gp.llt_.solve(gp.y_);
  const double log_det = 2.0 * gp.llt_.matrixLLT().diagonal().array().log().sum();
  gp.lml_ = -0.5 * gp.y_.dot(gp.alpha_) - 0.5 * log_det -
            0.5 * static_cast<double>(n) * kLog2Pi;
  return gp;
}

Eigen::MatrixXd GaussianProcess::gram() const {
  Eigen::MatrixXd k = KernelMatrix(x_, params_);
  k.diagonal().array() += params_.noise_variance + jitter_;
  return k;
}

Posterior GaussianProcess::StandardizedPosterior(const std::vector<double>& x) const {
  const Eigen::Index n = x_.rows();
  Eigen::VectorXd ks(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double r2 = 0.0;
    for (Eigen::Index d = 0; d < x_.cols(); ++d) {
      const double t = (x[d] - x_(i, d)) / params_.lengthscales[d];
      r2 += t * t;
    }
    ks(i) = Matern52FromDistance(std::sqrt(r2), params_.signal_variance);
  }
  Posterior p;
  p.mean = ks.dot(alpha_);
  const Eigen::VectorXd v = llt_.matrixL().solve(ks);
  p.variance = std::max(params_.signal_variance - v.squaredNorm(), 0.0);
  return p;
}

Posterior GaussianProcess::Predict(const std::vector<double>& x) const {
  Posterior p = StandardizedPosterior(x);
  p.mean = mean_ + std_ * p.mean;
  p.variance *= std_ * std_;
  return p;
}

}  // namespace boosthpo::bo
