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

#ifndef BOOSTHPO_GBDT_GOSS_HPP_
#define BOOSTHPO_GBDT_GOSS_HPP_

#include <cstdint>
#include <span>
#include <vector>

namespace boosthpo::gbdt {

// Rows chosen for one boosting iteration, ascending, with the weight applied
// to their gradient and hessian during histogram accumulation.
struct RowSample {
  std::vector<std::uint32_t> rows;
  std::vector<double> multipliers;
};

RowSample AllRows(std::size_t num_rows);

// top_rate >= 0, other_rate > 0 and top_rate + other_rate <= 1. top_rate == 1
// keeps every row, so other_rate is then unconstrained (beyond > 0).
inline bool GossRatesValid(double top_rate, double other_rate) {
  return top_rate >= 0.0 && other_rate > 0.0 &&
         (top_rate + other_rate <= 1.0 || top_rate == 1.0);
}

// Gradient-based one-side sampling. Keeps the ceil(top_rate * n) rows with
// the largest |g| (ties by row id) at weight 1, then draws
// ceil(other_rate * n) of the remaining rows uniformly without replacement
// at weight (1 - top_rate) / other_rate. Throws BadRates unless
// GossRatesValid(top_rate, other_rate).
RowSample GossSample(std::span<const double> abs_gradients, double top_rate,
                     double other_rate, std::uint64_t seed);

}  // namespace boosthpo::gbdt

#endif  // BOOSTHPO_GBDT_GOSS_HPP_
