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

#include "boosthpo/bayesopt/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <numeric>

#include "boosthpo/error.hpp"

namespace boosthpo::bo {
namespace {

enum Stream : std::uint64_t { kLhsStream = 1, kSuggestStream = 2, kReplaceStream = 3 };

std::vector<double> FromUnitPerDimension(const ParamSpace& space, const std::vector<double>& u) {
  std::vector<double> out;
  out.reserve(space.encoded_size());
  for (std::size_t i = 0; i < space.size(); ++i) {
    const Dimension& d = space.dimensions()[i];
    if (d.kind == Dimension::Kind::kCategorical) {
      const std::size_t c = std::min(static_cast<std::size_t>(u[i] * d.choices.size()),
                                     d.choices.size() - 1);
      for (std::size_t k = 0; k < d.choices.size(); ++k) out.push_back(k == c ? 1.0 : 0.0);
    } else {
      out.push_back(u[i]);
    }
  }
  return out;
}

TrialRecord Evaluate(const ObjectiveFn& objective, const Assignment& params, std::size_t index) {
  TrialRecord rec;
  rec.index = index;
  rec.params = params;
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };
  try {
    const TrialOutcome out = objective(params);
    rec.seconds = std::isfinite(out.seconds) && out.seconds >= 0.0 ? out.seconds : elapsed();
    if (std::isfinite(out.score)) {
      rec.score = out.score;
      rec.status = TrialStatus::kOk;
    } else {
      rec.status = TrialStatus::kFailed;
      rec.message = "objective returned a non-finite score";
    }
  } catch (const std::exception& e) {
    rec.seconds = elapsed();
    rec.status = TrialStatus::kFailed;
    rec.message = e.what();
  } catch (...) {
    rec.seconds = elapsed();
    rec.status = TrialStatus::kFailed;
    rec.message = "unknown exception";
  }
  return rec;
}

}  // namespace

std::string_view TrialStatusName(TrialStatus status) {
  return status == TrialStatus::kOk ? "ok" : "failed";
}

TrialStatus TrialStatusFromName(std::string_view name) {
  if (name == "ok") return TrialStatus::kOk;
  if (name == "failed") return TrialStatus::kFailed;
  throw Error(ErrorCode::kInvalidArgument, "unknown trial status '" + std::string(name) + "'");
}

std::vector<std::vector<double>> LatinHypercube(const ParamSpace& space, std::size_t count,
                                                Rng& rng) {
  const std::size_t dims = space.size();
  std::vector<std::vector<double>> unit(count, std::vector<double>(dims));
  std::vector<std::size_t> perm(count);
  for (std::size_t d = 0; d < dims; ++d) {
    std::iota(perm.begin(), perm.end(), 0);
    Shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t i = 0; i < count; ++i) {
      unit[i][d] = (static_cast<double>(perm[i]) + UniformUnit(rng)) / static_cast<double>(count);
    }
  }
  std::vector<std::vector<double>> out;
  out.reserve(count);
  for (const auto& u : unit) out.push_back(FromUnitPerDimension(space, u));
  return out;
}

std::vector<double> RandomPoint(const ParamSpace& space, Rng& rng) {
  std::vector<double> u(space.size());
  for (double& v : u) v = UniformUnit(rng);
  return FromUnitPerDimension(space, u);
}

std::vector<TrialRecord> RunHpo(const ParamSpace& space, const ObjectiveFn& objective,
                                std::size_t budget, std::size_t init_count,
                                std::uint64_t seed, const HpoOptions& options) {
  if (space.size() == 0) throw Error(ErrorCode::kInvalidArgument, "empty parameter space");
  if (init_count < 2 || budget < init_count) {
    throw Error(ErrorCode::kInvalidArgument, "requires budget >= init_count >= 2");
  }
  std::vector<TrialRecord> records;
  records.reserve(budget);
  std::vector<std::vector<double>> encoded;
  auto record = [&](TrialRecord rec, std::vector<double> x) {
    if (options.on_trial) options.on_trial(rec);
    records.push_back(std::move(rec));
    encoded.push_back(std::move(x));
  };

  Rng lhs_rng(DeriveSeed(seed, {kLhsStream}));
  for (auto& x : LatinHypercube(space, init_count, lhs_rng)) {
    const Assignment params = space.Decode(x);
    record(Evaluate(objective, params, records.size()), space.Encode(params));
  }

  while (records.size() < budget) {
    const std::size_t t = records.size();
    std::optional<double> worst;
    for (const auto& r : records) {
      if (r.score && (!worst || *r.score < *worst)) worst = r.score;
    }
    std::vector<double> next;
    if (worst) {
      std::vector<double> y;
      y.reserve(records.size());
      for (const auto& r : records) y.push_back(r.score.value_or(*worst));
      const GaussianProcess gp = GaussianProcess::Fit(encoded, y, options.gp);
      Rng rng(DeriveSeed(seed, {kSuggestStream, t}));
      next = SuggestNext(gp, space, rng, options.suggest).point;
    }
    Assignment params;
    bool duplicate = next.empty();
    if (!duplicate) {
      params = space.Decode(next);
      duplicate = std::any_of(records.begin(), records.end(),
                              [&](const TrialRecord& r) { return r.params == params; });
    }
    if (duplicate) {
      Rng rng(DeriveSeed(seed, {kReplaceStream, t}));
      params = space.Decode(RandomPoint(space, rng));
    }
    record(Evaluate(objective, params, t), space.Encode(params));
  }
  return records;
}

std::vector<TrialRecord> RandomSearch(const ParamSpace& space, const ObjectiveFn& objective,
                                      std::size_t budget, std::uint64_t seed,
                                      const TrialCallback& on_trial) {
  std::vector<TrialRecord> records;
  records.reserve(budget);
  Rng rng(DeriveSeed(seed, {kReplaceStream, 0xffff}));
  for (std::size_t t = 0; t < budget; ++t) {
    const Assignment params = space.Decode(RandomPoint(space, rng));
    records.push_back(Evaluate(objective, params, t));
    if (on_trial) on_trial(records.back());
  }
  return records;
}

std::vector<std::optional<double>> BestSoFar(const std::vector<TrialRecord>& records) {
  std::vector<std::optional<double>> out;
  out.reserve(records.size());
  std::optional<double> best;
  for (const auto& r : records) {
    if (r.score && (!best || *r.score > *best)) best = r.score;
    out.push_back(best);
  }
  return out;
}

}  // namespace boosthpo::bo
