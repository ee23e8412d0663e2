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

#include "boosthpo/bayesopt/param_space.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include "boosthpo/error.hpp"

namespace boosthpo::bo {
namespace {

double Transform(const Dimension& d, double v) {
  return d.scale == Scale::kLog10 ? std::log10(v) : v;
}

double Untransform(const Dimension& d, double t) {
  return d.scale == Scale::kLog10 ? std::pow(10.0, t) : t;
}

double ToUnit(const Dimension& d, double v) {
  const double lo = Transform(d, d.lo);
  const double hi = Transform(d, d.hi);
  return std::clamp((Transform(d, v) - lo) / (hi - lo), 0.0, 1.0);
}

double FromUnit(const Dimension& d, double u) {
  const double lo = Transform(d, d.lo);
  const double hi = Transform(d, d.hi);
  u = std::clamp(u, 0.0, 1.0);
  if (u == 0.0) return d.lo;
  if (u == 1.0) return d.hi;
  return std::clamp(Untransform(d, lo + u * (hi - lo)), d.lo, d.hi);
}

const char* KindName(Dimension::Kind kind) {
  switch (kind) {
    case Dimension::Kind::kContinuous:
      return "continuous";
    case Dimension::Kind::kInteger:
      return "integer";
    case Dimension::Kind::kCategorical:
      return "categorical";
  }
  return "?";
}

}  // namespace

Dimension Dimension::Continuous(std::string name, double lo, double hi, Scale scale) {
  Dimension d;
  d.name = std::move(name);
  d.kind = Kind::kContinuous;
  d.lo = lo;
  d.hi = hi;
  d.scale = scale;
  return d;
}

Dimension Dimension::Integer(std::string name, std::int64_t lo, std::int64_t hi,
                             Scale scale) {
  Dimension d = Continuous(std::move(name), static_cast<double>(lo),
                           static_cast<double>(hi), scale);
  d.kind = Kind::kInteger;
  return d;
}

Dimension Dimension::Categorical(std::string name, std::vector<std::string> choices) {
  Dimension d;
  d.name = std::move(name);
  d.kind = Kind::kCategorical;
  d.choices = std::move(choices);
  return d;
}

std::string FormatValue(const ParamValue& value) {
  if (const auto* s = std::get_if<std::string>(&value)) return *s;
  if (const auto* i = std::get_if<std::int64_t>(&value)) return std::to_string(*i);
  return FormatReal(std::get<double>(value));
}

std::string FormatReal(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

ParamSpace::ParamSpace(std::vector<Dimension> dimensions) : dims_(std::move(dimensions)) {
  std::set<std::string> names;
  for (const Dimension& d : dims_) {
    if (d.name.empty() || !names.insert(d.name).second) {
      throw Error(ErrorCode::kConfig, "dimension names must be unique and nonempty");
    }
    if (d.kind == Dimension::Kind::kCategorical) {
      if (d.choices.size() < 2) {
        throw Error(ErrorCode::kConfig, "categorical '" + d.name + "' needs >= 2 choices");
      }
      std::set<std::string> uniq(d.choices.begin(), d.choices.end());
      if (uniq.size() != d.choices.size()) {
        throw Error(ErrorCode::kConfig, "categorical '" + d.name + "' has duplicate choices");
      }
    } else {
      if (!std::isfinite(d.lo) || !std::isfinite(d.hi) || !(d.lo < d.hi)) {
        throw Error(ErrorCode::kConfig, "dimension '" + d.name + "' requires lo < hi");
      }
      if (d.scale == Scale::kLog10 && !(d.lo > 0.0)) {
        throw Error(ErrorCode::kConfig, "log-scale dimension '" + d.name + "' requires lo > 0");
      }
      if (d.kind == Dimension::Kind::kInteger &&
          (d.lo != std::round(d.lo) || d.hi != std::round(d.hi))) {
        throw Error(ErrorCode::kConfig, "integer dimension '" + d.name + "' has fractional bounds");
      }
    }
    encoded_size_ += d.width();
  }
}

int ParamSpace::Find(const std::string& name) const {
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (dims_[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

bool ParamSpace::Contains(const Assignment& assignment) const {
  if (assignment.size() != dims_.size()) return false;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    const Dimension& d = dims_[i];
    const ParamValue& v = assignment[i];
    switch (d.kind) {
      case Dimension::Kind::kContinuous: {
        const auto* x = std::get_if<double>(&v);
        if (x == nullptr || !(*x >= d.lo && *x <= d.hi)) return false;
        break;
      }
      case Dimension::Kind::kInteger: {
        const auto* x = std::get_if<std::int64_t>(&v);
        if (x == nullptr) return false;
        const double xd = static_cast<double>(*x);
        if (xd < d.lo || xd > d.hi) return false;
        break;
      }
      case Dimension::Kind::kCategorical: {
        const auto* x = std::get_if<std::string>(&v);
        if (x == nullptr ||
            std::find(d.choices.begin(), d.choices.end(), *x) == d.choices.end()) {
          return false;
        }
        break;
      }
    }
  }
  return true;
}

std::vector<double> ParamSpace::Encode(const Assignment& assignment) const {
  if (!Contains(assignment)) {
    throw Error(ErrorCode::kOutOfRange, "assignment is not inside the parameter space");
  }
  std::vector<double> out;
  out.reserve(encoded_size_);
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    const Dimension& d = dims_[i];
    const ParamValue& v = assignment[i];
    switch (d.kind) {
      case Dimension::Kind::kContinuous:
        out.push_back(ToUnit(d, std::get<double>(v)));
        break;
      case Dimension::Kind::kInteger:
        out.push_back(ToUnit(d, static_cast<double>(std::get<std::int64_t>(v))));
        break;
      case Dimension::Kind::kCategorical: {
        const auto& s = std::get<std::string>(v);
        for (const std::string& c : d.choices) out.push_back(c == s ? 1.0 : 0.0);
        break;
      }
    }
  }
  return out;
}

Assignment ParamSpace::Decode(const std::vector<double>& encoded) const {
  if (encoded.size() != encoded_size_) {
    throw Error(ErrorCode::kOutOfRange, "encoded vector has wrong length");
  }
  Assignment out;
  out.reserve(dims_.size());
  std::size_t pos = 0;
  for (const Dimension& d : dims_) {
    switch (d.kind) {
      case Dimension::Kind::kContinuous:
        out.emplace_back(FromUnit(d, encoded[pos]));
        break;
      case Dimension::Kind::kInteger: {
        const double x = std::clamp(std::round(FromUnit(d, encoded[pos])), d.lo, d.hi);
        out.emplace_back(static_cast<std::int64_t>(x));
        break;
      }
      case Dimension::Kind::kCategorical: {
        std::size_t best = 0;
        for (std::size_t c = 1; c < d.choices.size(); ++c) {
          if (encoded[pos + c] > encoded[pos + best]) best = c;
        }
        out.emplace_back(d.choices[best]);
        break;
      }
    }
    pos += d.width();
  }
  return out;
}

nlohmann::json ParamSpace::ToJson() const {
  nlohmann::json dims = nlohmann::json::array();
  for (const Dimension& d : dims_) {
    nlohmann::json j{{"name", d.name}, {"type", KindName(d.kind)}};
    if (d.kind == Dimension::Kind::kCategorical) {
      j["choices"] = d.choices;
    } else {
      if (d.kind == Dimension::Kind::kInteger) {
        j["lo"] = static_cast<std::int64_t>(d.lo);
        j["hi"] = static_cast<std::int64_t>(d.hi);
      } else {
        j["lo"] = d.lo;
        j["hi"] = d.hi;
      }
      j["scale"] = d.scale == Scale::kLog10 ? "log10" : "linear";
    }
    dims.push_back(std::move(j));
  }
  return dims;
}

ParamSpace ParamSpace::FromJson(const nlohmann::json& doc) {
  if (!doc.is_array()) throw Error(ErrorCode::kConfig, "parameter space must be an array");
  std::vector<Dimension> dims;
  try {
    for (const auto& j : doc) {
      const std::string name = j.at("name").get<std::string>();
      const std::string type = j.at("type").get<std::string>();
      Scale scale = Scale::kLinear;
      if (j.contains("scale")) {
        const std::string s = j.at("scale").get<std::string>();
        if (s == "log10") {
          scale = Scale::kLog10;
        } else if (s != "linear") {
          throw Error(ErrorCode::kConfig, "unknown scale '" + s + "'");
        }
      }
      if (type == "continuous") {
        dims.push_back(Dimension::Continuous(name, j.at("lo").get<double>(),
                                             j.at("hi").get<double>(), scale));
      } else if (type == "integer") {
        dims.push_back(Dimension::Integer(name, j.at("lo").get<std::int64_t>(),
                                          j.at("hi").get<std::int64_t>(), scale));
      } else if (type == "categorical") {
        dims.push_back(
            Dimension::Categorical(name, j.at("choices").get<std::vector<std::string>>()));
      } else {
        throw Error(ErrorCode::kConfig, "unknown dimension type '" + type + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfig, std::string("bad parameter space: ") + e.what());
  }
  return ParamSpace(std::move(dims));
}

std::vector<std::string> ParamNames(const ParamSpace& space) {
  std::vector<std::string> out;
  for (const Dimension& d : space.dimensions()) out.push_back(d.name);
  return out;
}

nlohmann::json AssignmentToJson(const std::vector<std::string>& names,
                                const Assignment& assignment) {
  nlohmann::json out = nlohmann::json::object();
  for (std::size_t i = 0; i < names.size() && i < assignment.size(); ++i) {
    std::visit([&](const auto& v) { out[names[i]] = v; }, assignment[i]);
  }
  return out;
}

nlohmann::json AssignmentToJson(const ParamSpace& space, const Assignment& assignment) {
  return AssignmentToJson(ParamNames(space), assignment);
}

Assignment AssignmentFromJson(const ParamSpace& space, const nlohmann::json& doc) {
  Assignment out;
  try {
    for (const Dimension& d : space.dimensions()) {
      const auto& v = doc.at(d.name);
      switch (d.kind) {
        case Dimension::Kind::kContinuous:
          out.emplace_back(v.get<double>());
          break;
        case Dimension::Kind::kInteger:
          out.emplace_back(v.get<std::int64_t>());
          break;
        case Dimension::Kind::kCategorical:
          out.emplace_back(v.get<std::string>());
          break;
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfig, std::string("bad assignment: ") + e.what());
  }
  if (!space.Contains(out)) throw Error(ErrorCode::kOutOfRange, "assignment outside space");
  return out;
}

}  // namespace boosthpo::bo
