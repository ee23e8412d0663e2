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

#include "boosthpo/dataset.hpp"

#include <zlib.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <string_view>

#include "boosthpo/error.hpp"
#include "boosthpo/random.hpp"

namespace boosthpo::data {

std::string Task::ToString() const {
  if (is_binary()) return "binary";
  return "multiclass:" + std::to_string(num_classes);
}

Task Task::Parse(const std::string& text) {
  if (text == "binary") return Binary();
  constexpr std::string_view kPrefix = "multiclass:";
  if (text.rfind(kPrefix, 0) == 0) {
    int classes = 0;
    const char* begin = text.data() + kPrefix.size();
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, classes);
    if (ec == std::errc() && ptr == end && classes >= 2) {
      return Multiclass(classes);
    }
  }
  throw Error(ErrorCode::kConfig, "unknown task '" + text + "'");
}

LabeledDataset::LabeledDataset(std::size_t num_rows, std::size_t num_features,
                               std::vector<std::size_t> column_starts,
                               std::vector<std::uint32_t> row_ids,
                               std::vector<double> values,
                               std::vector<int> labels,
                               std::optional<std::vector<std::int64_t>> query_ids,
                               Task task)
    : num_features_(num_features),
      column_starts_(std::move(column_starts)),
      row_ids_(std::move(row_ids)),
      values_(std::move(values)),
      labels_(std::move(labels)),
      query_ids_(std::move(query_ids)),
      task_(task) {
  if (labels_.size() != num_rows) {
    throw Error(ErrorCode::kBadShape, "label count differs from row count");
  }
  if (query_ids_ && query_ids_->size() != num_rows) {
    throw Error(ErrorCode::kBadShape, "query id count differs from row count");
  }
  if (task_.num_classes < 2 ||
      (task_.is_binary() && task_.num_classes != 2)) {
    throw Error(ErrorCode::kBadShape, "invalid class count");
  }
  for (int label : labels_) {
    if (label < 0 || label >= task_.num_classes) {
      throw Error(ErrorCode::kBadShape,
                  "label " + std::to_string(label) + " out of range for " +
                      task_.ToString());
    }
  }
  if (column_starts_.size() != num_features_ + 1 || column_starts_.front() != 0 ||
      column_starts_.back() != row_ids_.size() ||
      row_ids_.size() != values_.size()) {
    throw Error(ErrorCode::kBadShape, "inconsistent column storage");
  }
  for (std::size_t j = 0; j < num_features_; ++j) {
    for (std::size_t k = column_starts_[j]; k < column_starts_[j + 1]; ++k) {
      if (row_ids_[k] >= num_rows ||
          (k > column_starts_[j] && row_ids_[k] <= row_ids_[k - 1])) {
        throw Error(ErrorCode::kBadShape, "column rows not ascending");
      }
    }
  }
}

std::span<const std::int64_t> LabeledDataset::query_ids() const {
  if (!query_ids_) return {};
  return *query_ids_;
}

double LabeledDataset::sparsity() const {
  const double cells =
      static_cast<double>(num_rows()) * static_cast<double>(num_features_);
  if (cells == 0.0) return 0.0;
  return 1.0 - static_cast<double>(values_.size()) / cells;
}

std::span<const std::uint32_t> LabeledDataset::column_rows(
    std::size_t feature) const {
  return std::span<const std::uint32_t>(row_ids_).subspan(
      column_starts_[feature],
      column_starts_[feature + 1] - column_starts_[feature]);
}

std::span<const double> LabeledDataset::column_values(std::size_t feature) const {
  return std::span<const double>(values_).subspan(
      column_starts_[feature],
      column_starts_[feature + 1] - column_starts_[feature]);
}

std::vector<double> LabeledDataset::DenseColumn(std::size_t feature) const {
  std::vector<double> column(num_rows(), 0.0);
  const auto rows = column_rows(feature);
  const auto vals = column_values(feature);
  for (std::size_t k = 0; k < rows.size(); ++k) column[rows[k]] = vals[k];
  return column;
}

std::vector<std::vector<double>> LabeledDataset::DenseRows() const {
  std::vector<std::vector<double>> rows(num_rows(),
                                        std::vector<double>(num_features_, 0.0));
  for (std::size_t j = 0; j < num_features_; ++j) {
    const auto r = column_rows(j);
    const auto v = column_values(j);
    for (std::size_t k = 0; k < r.size(); ++k) rows[r[k]][j] = v[k];
  }
  return rows;
}

std::vector<std::vector<Entry>> LabeledDataset::SparseRows() const {
  std::vector<std::vector<Entry>> rows(num_rows());
  for (std::size_t j = 0; j < num_features_; ++j) {
    const auto r = column_rows(j);
    const auto v = column_values(j);
    for (std::size_t k = 0; k < r.size(); ++k) {
      rows[r[k]].push_back({static_cast<std::uint32_t>(j), v[k]});
    }
  }
  return rows;
}

LabeledDataset LabeledDataset::Subset(std::span<const std::size_t> rows) const {
  std::vector<std::int64_t> position(num_rows(), -1);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= num_rows() || (i > 0 && rows[i] <= rows[i - 1])) {
      throw Error(ErrorCode::kInvalidArgument, "subset rows must be ascending");
    }
    position[rows[i]] = static_cast<std::int64_t>(i);
  }
  std::vector<std::size_t> starts{0};
  std::vector<std::uint32_t> row_ids;
  std::vector<double> values;
  for (std::size_t j = 0; j < num_features_; ++j) {
    const auto r = column_rows(j);
    const auto v = column_values(j);
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (position[r[k]] >= 0) {
        row_ids.push_back(static_cast<std::uint32_t>(position[r[k]]));
        values.push_back(v[k]);
      }
    }
    starts.push_back(row_ids.size());
  }
  std::vector<int> labels;
  labels.reserve(rows.size());
  for (std::size_t r : rows) labels.push_back(labels_[r]);
  std::optional<std::vector<std::int64_t>> qids;
  if (query_ids_) {
    qids.emplace();
    for (std::size_t r : rows) qids->push_back((*query_ids_)[r]);
  }
  return LabeledDataset(rows.size(), num_features_, std::move(starts),
                        std::move(row_ids), std::move(values), std::move(labels),
                        std::move(qids), task_);
}

LabeledDataset LabeledDataset::WithNumFeatures(std::size_t num_features) const {
  if (num_features < num_features_) {
    throw Error(ErrorCode::kBadShape, "cannot shrink the feature count");
  }
  auto starts = column_starts_;
  starts.resize(num_features + 1, row_ids_.size());
  return LabeledDataset(num_rows(), num_features, std::move(starts), row_ids_,
                        values_, labels_, query_ids_, task_);
}

void DatasetBuilder::AddRow(int label, std::span<const Entry> entries,
                            std::optional<std::int64_t> query_id) {
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (k > 0 && entries[k].feature <= entries[k - 1].feature) {
      throw Error(ErrorCode::kInvalidArgument,
                  "row entries must have ascending feature indices");
    }
    if (entries[k].value != 0.0) entries_.push_back(entries[k]);
    max_feature_plus_one_ = std::max<std::size_t>(max_feature_plus_one_,
                                                  entries[k].feature + 1);
  }
  row_starts_.push_back(entries_.size());
  labels_.push_back(label);
  query_ids_.push_back(query_id.value_or(0));
  any_query_ = any_query_ || query_id.has_value();
  all_query_ = all_query_ && query_id.has_value();
}

void DatasetBuilder::AddDenseRow(int label, std::span<const double> values,
                                 std::optional<std::int64_t> query_id) {
  std::vector<Entry> entries;
  entries.reserve(values.size());
  for (std::size_t j = 0; j < values.size(); ++j) {
    entries.push_back({static_cast<std::uint32_t>(j), values[j]});
  }
  AddRow(label, entries, query_id);
  max_feature_plus_one_ = std::max(max_feature_plus_one_, values.size());
}

LabeledDataset DatasetBuilder::Build(std::optional<std::size_t> num_features) && {
  if (labels_.empty()) throw Error(ErrorCode::kEmptyDataset, "no rows");
  if (any_query_ && !all_query_) {
    throw Error(ErrorCode::kBadShape, "query ids present on only some rows");
  }
  const std::size_t m = num_features.value_or(max_feature_plus_one_);
  if (m < max_feature_plus_one_) {
    throw Error(ErrorCode::kBadShape,
                "feature index exceeds the configured feature count");
  }
  std::vector<std::size_t> counts(m + 1, 0);
  for (const Entry& e : entries_) ++counts[e.feature + 1];
  std::partial_sum(counts.begin(), counts.end(), counts.begin());
  std::vector<std::size_t> cursor(counts.begin(), counts.end() - 1);
  std::vector<std::uint32_t> row_ids(entries_.size());
  std::vector<double> values(entries_.size());
  for (std::size_t i = 0; i + 1 < row_starts_.size(); ++i) {
    for (std::size_t k = row_starts_[i]; k < row_starts_[i + 1]; ++k) {
      const std::size_t slot = cursor[entries_[k].feature]++;
      row_ids[slot] = static_cast<std::uint32_t>(i);
      values[slot] = entries_[k].value;
    }
  }
  std::optional<std::vector<std::int64_t>> qids;
  if (any_query_) qids = std::move(query_ids_);
  const std::size_t n = labels_.size();
  return LabeledDataset(n, m, std::move(counts), std::move(row_ids),
                        std::move(values), std::move(labels_), std::move(qids),
                        task_);
}

namespace {

std::string ReadWholeFile(const std::string& path) {
  const bool gz = path.size() >= 3 && path.compare(path.size() - 3, 3, ".gz") == 0;
  if (gz) {
    gzFile file = gzopen(path.c_str(), "rb");
    if (file == nullptr) throw Error(ErrorCode::kIo, "cannot open " + path);
    std::string text;
    char buffer[1 << 16];
    int got;
    while ((got = gzread(file, buffer, sizeof(buffer))) > 0) {
      text.append(buffer, static_cast<std::size_t>(got));
    }
    const bool failed = got < 0;
    gzclose(file);
    if (failed) throw Error(ErrorCode::kIo, "corrupt gzip stream in " + path);
    return text;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool ParseDouble(std::string_view token, double& out) {
  if (token.empty()) return false;
  if (token.front() == '+') token.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc() && ptr == token.data() + token.size();
}

template <typename Int>
bool ParseInt(std::string_view token, Int& out) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc() && ptr == token.data() + token.size() && !token.empty();
}

struct ParsedRow {
  long long label;
  std::optional<std::int64_t> qid;
  std::vector<Entry> entries;
};

[[noreturn]] void Malformed(std::size_t line_no, const std::string& what) {
  throw Error(ErrorCode::kMalformedLine,
              "line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

LabeledDataset ParseSvmlight(std::istream& in, const SvmlightOptions& options) {
  std::vector<ParsedRow> rows;
  std::vector<std::size_t> line_numbers;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    while (pos < view.size()) {
      while (pos < view.size() && std::isspace(static_cast<unsigned char>(view[pos]))) ++pos;
      std::size_t end = pos;
      while (end < view.size() && !std::isspace(static_cast<unsigned char>(view[end]))) ++end;
      if (end > pos) tokens.push_back(view.substr(pos, end - pos));
      pos = end;
    }
    if (tokens.empty()) continue;

    ParsedRow row;
    double label = 0.0;
    if (!ParseDouble(tokens[0], label) || !std::isfinite(label)) {
      Malformed(line_no, "unreadable label '" + std::string(tokens[0]) + "'");
    }
    if (label != std::floor(label)) {
      throw Error(ErrorCode::kNonIntegerLabel,
                  "line " + std::to_string(line_no) + ": label " +
                      std::string(tokens[0]));
    }
    row.label = static_cast<long long>(label);
    std::size_t t = 1;
    if (t < tokens.size() && tokens[t].rfind("qid:", 0) == 0) {
      std::int64_t q = 0;
      if (!ParseInt(tokens[t].substr(4), q)) Malformed(line_no, "bad qid");
      row.qid = q;
      ++t;
    }
    for (; t < tokens.size(); ++t) {
      const auto colon = tokens[t].find(':');
      if (colon == std::string_view::npos) {
        Malformed(line_no, "expected index:value, got '" + std::string(tokens[t]) + "'");
      }
      std::uint64_t index = 0;
      double value = 0.0;
      if (!ParseInt(tokens[t].substr(0, colon), index) || index == 0 ||
          index > std::numeric_limits<std::uint32_t>::max()) {
        Malformed(line_no, "bad feature index");
      }
      if (!ParseDouble(tokens[t].substr(colon + 1), value)) {
        Malformed(line_no, "bad feature value");
      }
      const auto feature = static_cast<std::uint32_t>(index - 1);
      if (!row.entries.empty() && feature <= row.entries.back().feature) {
        Malformed(line_no, "feature indices must be ascending");
      }
      if (options.num_features && feature >= *options.num_features) {
        Malformed(line_no, "feature index beyond configured count");
      }
      row.entries.push_back({feature, value});
    }
    rows.push_back(std::move(row));
    line_numbers.push_back(line_no);
  }
  if (rows.empty()) throw Error(ErrorCode::kEmptyDataset, "no rows");

  Task task;
  bool minus_one_binary = false;
  if (options.task) {
    task = *options.task;
    minus_one_binary = task.is_binary() &&
                       std::all_of(rows.begin(), rows.end(), [](const ParsedRow& r) {
                         return r.label == -1 || r.label == 1;
                       });
  } else {
    long long lo = rows[0].label;
    long long hi = rows[0].label;
    for (const auto& r : rows) {
      lo = std::min(lo, r.label);
      hi = std::max(hi, r.label);
    }
    const bool pm_one = std::all_of(rows.begin(), rows.end(), [](const ParsedRow& r) {
      return r.label == -1 || r.label == 1;
    });
    if (pm_one) {
      task = Task::Binary();
      minus_one_binary = true;
    } else if (lo >= 0 && hi <= 1) {
      task = Task::Binary();
    } else if (lo >= 0) {
      task = Task::Multiclass(static_cast<int>(std::max<long long>(hi + 1, 2)));
    } else {
      throw Error(ErrorCode::kMalformedLine, "negative multiclass label");
    }
  }

  DatasetBuilder builder(task);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    long long label = rows[i].label;
    if (minus_one_binary && label == -1) label = 0;
    if (label < 0 || label >= task.num_classes) {
      Malformed(line_numbers[i],
                "label " + std::to_string(label) + " out of range for " + task.ToString());
    }
    builder.AddRow(static_cast<int>(label), rows[i].entries, rows[i].qid);
  }
  std::size_t max_feature = 0;
  for (const auto& r : rows) {
    if (!r.entries.empty()) {
      max_feature = std::max<std::size_t>(max_feature, r.entries.back().feature + 1);
    }
  }
  return std::move(builder).Build(options.num_features.value_or(max_feature));
}

LabeledDataset LoadSvmlight(const std::string& path,
                            const SvmlightOptions& options) {
  std::istringstream in(ReadWholeFile(path));
  return ParseSvmlight(in, options);
}

void WriteSvmlight(const LabeledDataset& dataset, std::ostream& out) {
  const auto rows = dataset.SparseRows();
  const auto qids = dataset.query_ids();
  out << std::setprecision(17);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out << dataset.labels()[i];
    if (!qids.empty()) out << " qid:" << qids[i];
    for (const Entry& e : rows[i]) out << ' ' << (e.feature + 1) << ':' << e.value;
    out << '\n';
  }
}

void WriteSvmlight(const LabeledDataset& dataset, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  WriteSvmlight(dataset, out);
}

namespace {

std::vector<std::size_t> TakeHoldout(std::vector<std::vector<std::size_t>> strata,
                                     double fraction, Rng& rng) {
  std::vector<std::size_t> picked;
  for (auto& members : strata) {
    Shuffle(members.begin(), members.end(), rng);
    const auto take = static_cast<std::size_t>(
        std::llround(fraction * static_cast<double>(members.size())));
    picked.insert(picked.end(), members.begin(), members.begin() + take);
  }
  return picked;
}

}  // namespace

SplitResult StratifiedSplit(const LabeledDataset& dataset, double fraction,
                            std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction < 1.0)) {
    throw Error(ErrorCode::kFractionOutOfRange,
                "split fraction must lie in [0, 1)");
  }
  const std::size_t n = dataset.num_rows();
  const auto& labels = dataset.labels();
  Rng rng(DeriveSeed(seed, {0x5917}));
  std::vector<bool> in_holdout(n, false);

  if (dataset.has_query_ids()) {
    const auto qids = dataset.query_ids();
    std::map<std::int64_t, std::size_t> query_index;
    std::vector<std::vector<std::size_t>> query_rows;
    for (std::size_t i = 0; i < n; ++i) {
      auto [it, inserted] = query_index.try_emplace(qids[i], query_rows.size());
      if (inserted) query_rows.emplace_back();
      query_rows[it->second].push_back(i);
    }
    // Queries are visited in order of first appearance.
    std::vector<std::size_t> order(query_rows.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return query_rows[a].front() < query_rows[b].front();
    });
    std::vector<std::vector<std::size_t>> strata(dataset.num_classes());
    for (std::size_t q : order) {
      std::vector<std::size_t> votes(dataset.num_classes(), 0);
      for (std::size_t r : query_rows[q]) ++votes[labels[r]];
      const auto majority = static_cast<std::size_t>(
          std::max_element(votes.begin(), votes.end()) - votes.begin());
      strata[majority].push_back(q);
    }
    for (std::size_t q : TakeHoldout(std::move(strata), fraction, rng)) {
      for (std::size_t r : query_rows[q]) in_holdout[r] = true;
    }
  } else {
    std::vector<std::vector<std::size_t>> strata(dataset.num_classes());
    for (std::size_t i = 0; i < n; ++i) strata[labels[i]].push_back(i);
    for (std::size_t r : TakeHoldout(std::move(strata), fraction, rng)) {
      in_holdout[r] = true;
    }
  }

  SplitResult result;
  result.seed = seed;
  for (std::size_t i = 0; i < n; ++i) {
    (in_holdout[i] ? result.holdout_rows : result.train_rows).push_back(i);
  }
  result.train = dataset.Subset(result.train_rows);
  result.holdout = dataset.Subset(result.holdout_rows);
  return result;
}

LabeledDataset MakeSynthetic(std::size_t num_rows, std::size_t num_features,
                             Task task, double separation, std::uint64_t seed) {
  if (num_rows < 2 || num_features < 1) {
    throw Error(ErrorCode::kBadShape, "synthetic data needs n >= 2 and m >= 1");
  }
  if (!(separation >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "separation must be >= 0");
  }
  const int classes = task.num_classes;
  Rng rng(DeriveSeed(seed, {0x5e7}));

  std::vector<std::vector<double>> means(classes, std::vector<double>(num_features));
  for (auto& mean : means) {
    double norm = 0.0;
    while (norm == 0.0) {
      for (double& v : mean) v = StandardNormal(rng);
      norm = std::sqrt(std::inner_product(mean.begin(), mean.end(), mean.begin(), 0.0));
    }
    for (double& v : mean) v *= separation / norm;
  }

  std::vector<int> labels(num_rows);
  for (std::size_t i = 0; i < num_rows; ++i) labels[i] = static_cast<int>(i % classes);
  Shuffle(labels.begin(), labels.end(), rng);

  DatasetBuilder builder(task);
  std::vector<double> row(num_features);
  for (std::size_t i = 0; i < num_rows; ++i) {
    for (std::size_t j = 0; j < num_features; ++j) {
      row[j] = means[labels[i]][j] + StandardNormal(rng);
    }
    std::optional<std::int64_t> qid;
    if (!task.is_binary()) qid = static_cast<std::int64_t>(i / 10);
    builder.AddDenseRow(labels[i], row, qid);
  }
  return std::move(builder).Build(num_features);
}

std::vector<double> ClassFrequencies(const LabeledDataset& dataset) {
  if (dataset.num_rows() == 0) throw Error(ErrorCode::kEmptyDataset, "no rows");
  std::vector<double> freq(dataset.num_classes(), 0.0);
  for (int label : dataset.labels()) freq[label] += 1.0;
  for (double& f : freq) f /= static_cast<double>(dataset.num_rows());
  return freq;
}

DatasetSummary Describe(const LabeledDataset& dataset) {
  DatasetSummary s;
  s.num_rows = dataset.num_rows();
  s.num_features = dataset.num_features();
  s.num_stored = dataset.num_stored();
  s.sparsity = dataset.sparsity();
  s.task = dataset.task();
  s.class_counts.assign(dataset.num_classes(), 0);
  for (int label : dataset.labels()) ++s.class_counts[label];
  if (dataset.has_query_ids()) {
    auto q = std::vector<std::int64_t>(dataset.query_ids().begin(),
                                       dataset.query_ids().end());
    std::sort(q.begin(), q.end());
    s.num_queries = static_cast<std::size_t>(std::unique(q.begin(), q.end()) - q.begin());
  }
  return s;
}

}  // namespace boosthpo::data
