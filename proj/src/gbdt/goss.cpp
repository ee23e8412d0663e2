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

#include "boosthpo/gbdt/goss.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "boosthpo/error.hpp"
#include "boosthpo/random.hpp"

namespace boosthpo::gbdt {

namespace {

// ceil(rate * n), ignoring representation error such as 0.7 * 10 = 7.000000000000001.
std::size_t CeilCount(double rate, std::size_t n) {
  const double x = rate * static_cast<double>(n);
  return std::min(n, static_cast<std::size_t>(std::ceil(x - 1e-9 * std::max(1.0, x))));
}

}  // namespace

RowSample AllRows(std::size_t num_rows) {
  RowSample sample;
  sample.rows.resize(num_rows);
  std::iota(sample.rows.begin(), sample.rows.end(), 0u);
  sample.multipliers.assign(num_rows, 1.0);
  return sample;
}

RowSample GossSample(std::span<const double> abs_gradients, double top_rate,
                     double other_rate, std::uint64_t seed) {
  if (!GossRatesValid(top_rate, other_rate)) {
    throw Error(ErrorCode::kBadRates, "goss rates need a >= 0, b > 0, a + b <= 1");
  }
  const std::size_t n = abs_gradients.size();
  const std::size_t top_count = CeilCount(top_rate, n);
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return abs_gradients[a] > abs_gradients[b];
  });

  std::vector<double> weight(n, 0.0);
  for (std::size_t i = 0; i < top_count; ++i) weight[order[i]] = 1.0;

  const std::size_t remainder = n - top_count;
  const std::size_t other_count = std::min(remainder, CeilCount(other_rate, n));
  if (other_count > 0) {
    // Partial Fisher-Yates over the tail of `order`.
    Rng rng(seed);
    const double amplify = (1.0 - top_rate) / other_rate;
    for (std::size_t i = 0; i < other_count; ++i) {
      const std::size_t j = top_count + i + UniformIndex(rng, remainder - i);
      std::swap(order[top_count + i], order[j]);
      weight[order[top_count + i]] = amplify;
    }
  }

  RowSample sample;
  sample.rows.reserve(top_count + other_count);
  sample.multipliers.reserve(top_count + other_count);
  for (std::uint32_t r = 0; r < n; ++r) {
    if (weight[r] > 0.0) {
      sample.rows.push_back(r);
      sample.multipliers.push_back(weight[r]);
    }
  }
  return sample;
}

}  // namespace boosthpo::gbdt
