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

#include "boosthpo/gbdt/ensemble.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "boosthpo/error.hpp"
#include "boosthpo/gbdt/binning.hpp"

namespace boosthpo::gbdt {

namespace {

constexpr const char* kFormatName = "boosthpo.ensemble";

nlohmann::json NodeToJson(const std::vector<TreeNode>& nodes, std::int32_t id) {
  const TreeNode& node = nodes[id];
  if (node.is_leaf()) return {{"leaf", node.value}};
  nlohmann::json j;
  j["feature"] = node.feature;
  j["bin"] = node.bin;
  j["threshold"] = node.threshold;
  j["gain"] = node.gain;
  j["left"] = NodeToJson(nodes, node.left);
  j["right"] = NodeToJson(nodes, node.right);
  return j;
}

// Mirrors the grower's allocation order: both children are appended before
// descending into the left one.
void NodeFromJson(const nlohmann::json& j, std::int32_t id, std::vector<TreeNode>& nodes,
                  int depth) {
  if (depth > kMaxDepth) throw Error(ErrorCode::kBadModel, "tree deeper than 32");
  if (j.contains("leaf")) {
    nodes[id].value = j.at("leaf").get<double>();
    return;
  }
  const auto left = static_cast<std::int32_t>(nodes.size());
  nodes.resize(nodes.size() + 2);
  TreeNode& node = nodes[id];
  node.feature = j.at("feature").get<std::int32_t>();
  node.bin = j.at("bin").get<BinId>();
  node.threshold = j.at("threshold").get<double>();
  node.gain = j.at("gain").get<double>();
  node.left = left;
  node.right = left + 1;
  NodeFromJson(j.at("left"), left, nodes, depth + 1);
  NodeFromJson(j.at("right"), left + 1, nodes, depth + 1);
}

}  // namespace

Ensemble::Ensemble(Objective objective, std::size_t num_features,
                   std::vector<double> base_margins,
                   std::vector<std::vector<double>> boundaries,
                   std::vector<std::vector<Tree>> trees_per_output)
    : objective_(objective),
      num_features_(num_features),
      base_margins_(std::move(base_margins)),
      boundaries_(std::move(boundaries)),
      trees_(std::move(trees_per_output)) {
  const auto k_out = static_cast<std::size_t>(objective_.num_outputs());
  if (base_margins_.size() != k_out || trees_.size() != k_out) {
    throw Error(ErrorCode::kBadModel, "output count does not match the objective");
  }
  if (boundaries_.size() != num_features_) {
    throw Error(ErrorCode::kBadModel, "boundary lists do not match the feature count");
  }
  for (const auto& b : boundaries_) {
    for (std::size_t i = 1; i < b.size(); ++i) {
      if (!(b[i] > b[i - 1])) throw Error(ErrorCode::kBadModel, "boundaries not ascending");
    }
  }
  for (const auto& list : trees_) {
    if (list.size() != trees_[0].size()) {
      throw Error(ErrorCode::kBadModel, "tree lists differ in length across classes");
    }
    for (const Tree& tree : list) tree.CheckWellFormed(boundaries_);
  }
}

std::vector<double> Ensemble::PredictMargins(const data::LabeledDataset& dataset) const {
  const BinnedMatrix binned = ApplyBins(dataset, boundaries_);
  const auto k_out = static_cast<std::size_t>(objective_.num_outputs());
  const std::size_t n = dataset.num_rows();
  std::vector<double> margins(n * k_out);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < k_out; ++k) margins[i * k_out + k] = base_margins_[k];
  }
  for (std::size_t k = 0; k < k_out; ++k) {
    for (const Tree& tree : trees_[k]) {
      for (std::size_t i = 0; i < n; ++i) margins[i * k_out + k] += tree.PredictBinned(binned, i);
    }
  }
  return margins;
}

std::vector<double> Ensemble::PredictMargins(std::span<const std::vector<double>> rows) const {
  const auto k_out = static_cast<std::size_t>(objective_.num_outputs());
  std::vector<double> margins(rows.size() * k_out);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() > num_features_) {
      throw Error(ErrorCode::kBadShape, "row is wider than the model's feature count");
    }
    for (double v : rows[i]) {
      if (!std::isfinite(v)) throw Error(ErrorCode::kNonFiniteFeature, "feature value is not finite");
    }
    for (std::size_t k = 0; k < k_out; ++k) {
      double m = base_margins_[k];
      for (const Tree& tree : trees_[k]) m += tree.PredictRaw(rows[i]);
      margins[i * k_out + k] = m;
    }
  }
  return margins;
}

std::vector<double> Ensemble::PredictProba(const data::LabeledDataset& dataset) const {
  return MarginsToProbabilities(PredictMargins(dataset), objective_);
}

std::vector<double> Ensemble::PredictProba(std::span<const std::vector<double>> rows) const {
  return MarginsToProbabilities(PredictMargins(rows), objective_);
}

nlohmann::json Ensemble::ToJson() const {
  nlohmann::json doc;
  doc["format"] = kFormatName;
  doc["version"] = kEnsembleFormatVersion;
  doc["objective"] = objective_.Name();
  doc["num_classes"] = objective_.num_classes;
  doc["num_features"] = num_features_;
  doc["num_iterations"] = num_iterations();
  doc["base_margins"] = base_margins_;
  doc["boundaries"] = boundaries_;
  nlohmann::json trees = nlohmann::json::array();
  for (const auto& list : trees_) {
    nlohmann::json out = nlohmann::json::array();
    for (const Tree& tree : list) out.push_back(NodeToJson(tree.nodes(), 0));
    trees.push_back(std::move(out));
  }
  doc["trees"] = std::move(trees);
  return doc;
}

Ensemble Ensemble::FromJson(const nlohmann::json& doc) {
  try {
    if (doc.at("format").get<std::string>() != kFormatName) {
      throw Error(ErrorCode::kBadModel, "not a boosthpo ensemble document");
    }
    const int version = doc.at("version").get<int>();
    if (version != kEnsembleFormatVersion) {
      throw Error(ErrorCode::kBadModel, "unsupported model version " + std::to_string(version));
    }
    const Objective objective = Objective::FromName(doc.at("objective").get<std::string>(),
                                                    doc.at("num_classes").get<int>());
    std::vector<std::vector<Tree>> trees;
    for (const auto& list : doc.at("trees")) {
      std::vector<Tree> out;
      for (const auto& root : list) {
        std::vector<TreeNode> nodes(1);
        NodeFromJson(root, 0, nodes, 0);
        out.emplace_back(std::move(nodes));
      }
      trees.push_back(std::move(out));
    }
    return Ensemble(objective, doc.at("num_features").get<std::size_t>(),
                    doc.at("base_margins").get<std::vector<double>>(),
                    doc.at("boundaries").get<std::vector<std::vector<double>>>(),
                    std::move(trees));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kBadModel, e.what());
  }
}

std::string Ensemble::Serialize() const { return ToJson().dump() + "\n"; }

void Ensemble::Save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out << Serialize();
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + path);
}

Ensemble Ensemble::Load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kBadModel, e.what());
  }
  return FromJson(doc);
}

}  // namespace boosthpo::gbdt
