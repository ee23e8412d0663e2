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

#ifndef BOOSTHPO_BAYESOPT_PARAM_SPACE_HPP_
#define BOOSTHPO_BAYESOPT_PARAM_SPACE_HPP_

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace boosthpo::bo {

enum class Scale { kLinear, kLog10 };

struct Dimension {
  enum class Kind { kContinuous, kInteger, kCategorical };

  std::string name;
  Kind kind = Kind::kContinuous;
  double lo = 0.0;
  double hi = 1.0;
  Scale scale = Scale::kLinear;
  std::vector<std::string> choices;

  static Dimension Continuous(std::string name, double lo, double hi,
                              Scale scale = Scale::kLinear);
  static Dimension Integer(std::string name, std::int64_t lo, std::int64_t hi,
                           Scale scale = Scale::kLinear);
  static Dimension Categorical(std::string name, std::vector<std::string> choices);

  // Encoded width: one-hot block size for categoricals, otherwise 1.
  std::size_t width() const {
    return kind == Kind::kCategorical ? choices.size() : 1;
  }
};

// A concrete value per dimension: double (continuous), int64 (integer) or
// string (categorical choice).
using ParamValue = std::variant<double, std::int64_t, std::string>;
using Assignment = std::vector<ParamValue>;

std::string FormatValue(const ParamValue& value);
// Shortest text that parses back to the same double.
std::string FormatReal(double v);

class ParamSpace {
 public:
  ParamSpace() = default;
  // Throws Config when a dimension is malformed (lo >= hi, log scale with
  // lo <= 0, fewer than two choices, duplicate names).
  explicit ParamSpace(std::vector<Dimension> dimensions);

  const std::vector<Dimension>& dimensions() const { return dims_; }
  std::size_t size() const { return dims_.size(); }
  std::size_t encoded_size() const { return encoded_size_; }
  // Index of the dimension named `name`, or -1.
  int Find(const std::string& name) const;

  bool Contains(const Assignment& assignment) const;
  // Unit-hypercube encoding; throws OutOfRange for invalid assignments.
  std::vector<double> Encode(const Assignment& assignment) const;
  // Inverse of Encode for points of [0,1]^D: clamps, rounds integers,
  // argmax (lowest index on ties) for categorical blocks.
  Assignment Decode(const std::vector<double>& encoded) const;

  nlohmann::json ToJson() const;
  static ParamSpace FromJson(const nlohmann::json& doc);

 private:
  std::vector<Dimension> dims_;
  std::size_t encoded_size_ = 0;
};

std::vector<std::string> ParamNames(const ParamSpace& space);
nlohmann::json AssignmentToJson(const std::vector<std::string>& names,
                                const Assignment& assignment);
nlohmann::json AssignmentToJson(const ParamSpace& space, const Assignment& assignment);
Assignment AssignmentFromJson(const ParamSpace& space, const nlohmann::json& doc);

}  // namespace boosthpo::bo

#endif  // BOOSTHPO_BAYESOPT_PARAM_SPACE_HPP_
