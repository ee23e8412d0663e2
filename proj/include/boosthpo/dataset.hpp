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

#ifndef BOOSTHPO_DATASET_HPP_
#define BOOSTHPO_DATASET_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace boosthpo::data {

struct Task {
  enum class Kind { kBinary, kMulticlass };

  Kind kind = Kind::kBinary;
  int num_classes = 2;

  static Task Binary() { return {Kind::kBinary, 2}; }
  static Task Multiclass(int num_classes) {
    return {Kind::kMulticlass, num_classes};
  }

  bool is_binary() const { return kind == Kind::kBinary; }
  // "binary" or "multiclass:<C>".
  std::string ToString() const;
  static Task Parse(const std::string& text);

  friend bool operator==(const Task&, const Task&) = default;
};

// One nonzero entry of a row, with a 0-based feature index.
struct Entry {
  std::uint32_t feature;
  double value;
};

// Immutable labeled dataset with column-major (CSC) sparse storage. Entries
// that are not stored have the value 0.0.
class LabeledDataset {
 public:
  LabeledDataset() = default;

  // Takes ownership of CSC arrays. `column_starts` has num_features + 1
  // entries; row ids inside a column must be strictly ascending. Throws on
  // any violated invariant.
  LabeledDataset(std::size_t num_rows, std::size_t num_features,
                 std::vector<std::size_t> column_starts,
                 std::vector<std::uint32_t> row_ids,
                 std::vector<double> values, std::vector<int> labels,
                 std::optional<std::vector<std::int64_t>> query_ids,
                 Task task);

  std::size_t num_rows() const { return labels_.size(); }
  std::size_t num_features() const { return num_features_; }
  const Task& task() const { return task_; }
  int num_classes() const { return task_.num_classes; }

  const std::vector<int>& labels() const { return labels_; }
  bool has_query_ids() const { return query_ids_.has_value(); }
  // Empty span when the dataset has no query ids.
  std::span<const std::int64_t> query_ids() const;

  std::size_t num_stored() const { return values_.size(); }
  // 1 - stored / (n * m).
  double sparsity() const;

  std::span<const std::uint32_t> column_rows(std::size_t feature) const;
  std::span<const double> column_values(std::size_t feature) const;

  // Materializes one feature as a dense vector of length num_rows().
  std::vector<double> DenseColumn(std::size_t feature) const;
  // Row-major dense copy (n x m), for prediction on raw rows.
  std::vector<std::vector<double>> DenseRows() const;
  // Per-row stored entries, ascending feature index.
  std::vector<std::vector<Entry>> SparseRows() const;

  // Rows in the given (ascending) order; keeps num_features and task.
  LabeledDataset Subset(std::span<const std::size_t> rows) const;
  // Same rows, declared with a wider feature count (for aligning loads).
  LabeledDataset WithNumFeatures(std::size_t num_features) const;

  friend bool operator==(const LabeledDataset&, const LabeledDataset&) = default;

 private:
  std::size_t num_features_ = 0;
  std::vector<std::size_t> column_starts_{0};
  std::vector<std::uint32_t> row_ids_;
  std::vector<double> values_;
  std::vector<int> labels_;
  std::optional<std::vector<std::int64_t>> query_ids_;
  Task task_;
};

// Accumulates rows and produces a LabeledDataset.
class DatasetBuilder {
 public:
  explicit DatasetBuilder(Task task) : task_(task) {}

  // Entries must have strictly ascending feature indices. Zero values are
  // dropped.
  void AddRow(int label, std::span<const Entry> entries,
              std::optional<std::int64_t> query_id = std::nullopt);
  void AddDenseRow(int label, std::span<const double> values,
                   std::optional<std::int64_t> query_id = std::nullopt);

  std::size_t num_rows() const { return labels_.size(); }

  // num_features defaults to 1 + the largest feature index seen.
  LabeledDataset Build(std::optional<std::size_t> num_features = std::nullopt) &&;

 private:
  Task task_;
  std::vector<int> labels_;
  std::vector<std::int64_t> query_ids_;
  bool any_query_ = false;
  bool all_query_ = true;
  std::vector<std::size_t> row_starts_{0};
  std::vector<Entry> entries_;
  std::size_t max_feature_plus_one_ = 0;
};

struct SvmlightOptions {
  // Inferred from the labels when absent: {0,1} (or {-1,+1}) -> binary,
  // otherwise multiclass with max label + 1 classes.
  std::optional<Task> task;
  // Defaults to the largest 1-based index present in the file.
  std::optional<std::size_t> num_features;
};

// Reads svmlight / libsvm text (`<label> [qid:<q>] <idx>:<val> ... [# ...]`,
// 1-based ascending indices). Paths ending in ".gz" are decompressed.
LabeledDataset LoadSvmlight(const std::string& path,
                            const SvmlightOptions& options = {});
LabeledDataset ParseSvmlight(std::istream& in,
                             const SvmlightOptions& options = {});
void WriteSvmlight(const LabeledDataset& dataset, std::ostream& out);
void WriteSvmlight(const LabeledDataset& dataset, const std::string& path);

struct SplitResult {
  LabeledDataset train;
  LabeledDataset holdout;
  std::vector<std::size_t> train_rows;
  std::vector<std::size_t> holdout_rows;
  std::uint64_t seed = 0;
};

// Per-class stratified holdout split; with query ids whole queries move
// together, stratified on the query's majority label.
SplitResult StratifiedSplit(const LabeledDataset& dataset, double fraction,
                            std::uint64_t seed);

// Class-conditional unit Gaussians whose means sit `separation` away from the
// origin along one random unit direction per class. Labels are balanced. For
// multiclass tasks consecutive rows are grouped into queries of 10.
LabeledDataset MakeSynthetic(std::size_t num_rows, std::size_t num_features,
                             Task task, double separation, std::uint64_t seed);

std::vector<double> ClassFrequencies(const LabeledDataset& dataset);

struct DatasetSummary {
  std::size_t num_rows = 0;
  std::size_t num_features = 0;
  std::size_t num_stored = 0;
  double sparsity = 0.0;
  std::size_t num_queries = 0;
  Task task;
  std::vector<std::size_t> class_counts;
};

DatasetSummary Describe(const LabeledDataset& dataset);

}  // namespace boosthpo::data

#endif  // BOOSTHPO_DATASET_HPP_
