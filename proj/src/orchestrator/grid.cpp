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

#include "boosthpo/orchestrator/grid.hpp"

#include <cmath>

#include "boosthpo/error.hpp"

namespace boosthpo::orch {
namespace {

using bo::ParamValue;

std::vector<ParamValue> Ints(std::initializer_list<std::int64_t> v) {
  return {v.begin(), v.end()};
}

std::vector<ParamValue> Reals(std::initializer_list<double> v) { return {v.begin(), v.end()}; }

double AsReal(const ParamValue& v, const std::string& name) {
  if (const auto* d = std::get_if<double>(&v)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  throw Error(ErrorCode::kConfig, "parameter '" + name + "' must be numeric");
}

int AsInt(const ParamValue& v, const std::string& name) {
  const double x = AsReal(v, name);
  if (x != std::round(x) || std::abs(x) > 1e9) {
    throw Error(ErrorCode::kConfig, "parameter '" + name + "' must be an integer");
  }
  return static_cast<int>(x);
}

}  // namespace

std::string_view ProfileName(Profile profile) {
  switch (profile) {
    case Profile::kXgb:
      return "xgb";
    case Profile::kLgbm:
      return "lgbm";
    case Profile::kCat:
      return "cat";
  }
  return "?";
}

Profile ProfileFromName(std::string_view name) {
  if (name.ends_with("-grid")) name.remove_suffix(5);
  if (name == "xgb") return Profile::kXgb;
  if (name == "lgbm") return Profile::kLgbm;
  if (name == "cat") return Profile::kCat;
  throw Error(ErrorCode::kConfig, "unknown grid profile '" + std::string(name) + "'");
}

Grid::Grid(std::vector<std::string> names, std::vector<std::vector<bo::ParamValue>> axes)
    : names_(std::move(names)), axes_(std::move(axes)) {
  if (names_.size() != axes_.size()) {
    throw Error(ErrorCode::kConfig, "grid axis names and values differ in length");
  }
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    if (axes_[i].empty()) throw Error(ErrorCode::kConfig, "grid axis '" + names_[i] + "' is empty");
  }
}

std::size_t Grid::size() const {
  if (axes_.empty()) return 0;
  std::size_t n = 1;
  for (const auto& axis : axes_) n *= axis.size();
  return n;
}

bo::Assignment Grid::At(std::size_t index) const {
  if (index >= size()) throw Error(ErrorCode::kOutOfRange, "grid index out of range");
  bo::Assignment out(axes_.size());
  for (std::size_t a = axes_.size(); a-- > 0;) {
    out[a] = axes_[a][index % axes_[a].size()];
    index /= axes_[a].size();
  }
  return out;
}

std::vector<bo::Assignment> Grid::Enumerate() const {
  std::vector<bo::Assignment> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(At(i));
  return out;
}

Grid MakeGrid(Profile profile) {
  std::vector<std::string> names{"iterations", "max_depth", "lambda", "learning_rate"};
  std::vector<std::vector<ParamValue>> axes{Ints({40, 80, 160, 320, 480}), Ints({4, 8, 10, 12}),
                                            Reals({0.0, 1.0, 100.0}), Reals({0.1, 0.3})};
  if (profile != Profile::kCat) {
    names.push_back("feature_fraction");
    axes.push_back(Reals({0.8, 1.0}));
  }
  if (profile == Profile::kLgbm) {
    names.push_back("boosting");
    axes.push_back({ParamValue(std::string("gbdt")), ParamValue(std::string("goss"))});
  }
  return Grid(std::move(names), std::move(axes));
}

gbdt::HyperParams ApplyAssignment(gbdt::HyperParams base, const std::vector<std::string>& names,
                                  const bo::Assignment& assignment) {
  if (names.size() != assignment.size()) {
    throw Error(ErrorCode::kConfig, "assignment does not match parameter names");
  }
  for (std::size_t i = 0; i < names.size(); ++i) {
    const std::string& name = names[i];
    const ParamValue& v = assignment[i];
    if (name == "iterations") {
      base.iterations = AsInt(v, name);
    } else if (name == "max_depth") {
      base.max_depth = AsInt(v, name);
    } else if (name == "lambda") {
      base.lambda = AsReal(v, name);
    } else if (name == "learning_rate") {
      base.learning_rate = AsReal(v, name);
    } else if (name == "feature_fraction") {
      base.feature_fraction = AsReal(v, name);
    } else if (name == "boosting") {
      const auto* s = std::get_if<std::string>(&v);
      if (s == nullptr) throw Error(ErrorCode::kConfig, "boosting must be a string");
      if (*s == "gbdt") {
        base.boosting = gbdt::Boosting::Gbdt();
      } else if (*s == "goss") {
        base.boosting = gbdt::Boosting::Goss();
      } else {
        throw Error(ErrorCode::kConfig, "unknown boosting '" + *s + "'");
      }
    } else {
      throw Error(ErrorCode::kConfig, "unknown hyper-parameter '" + name + "'");
    }
  }
  return base;
}

std::vector<gbdt::HyperParams> EnumerateGrid(Profile profile, const gbdt::HyperParams& base) {
  const Grid grid = MakeGrid(profile);
  std::vector<gbdt::HyperParams> out;
  out.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out.push_back(ApplyAssignment(base, grid.names(), grid.At(i)));
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> Partition(std::size_t count,
                                                           std::size_t parts) {
  if (parts == 0) throw Error(ErrorCode::kInvalidArgument, "need at least one partition");
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t base = count / parts, extra = count % parts;
  std::size_t begin = 0;
  for (std::size_t p = 0; p < parts; ++p) {
    const std::size_t len = base + (p < extra ? 1 : 0);
    if (len == 0) break;
    out.emplace_back(begin, begin + len);
    begin += len;
  }
  return out;
}

}  // namespace boosthpo::orch
