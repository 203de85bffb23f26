/*
 * Copyright 2026 The groupcf Authors.
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

#include "groupcf/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "groupcf/errors.hpp"
#include "groupcf/random.hpp"

namespace groupcf {

const std::vector<std::string>& DefaultFeatures() {
  static const std::vector<std::string> kFeatures = {
      "EnvironmentSatisfaction", "JobInvolvement",     "JobSatisfaction",
      "MonthlyIncome",           "PercentSalaryHike",  "YearsInCurrentRole",
      "YearsSinceLastPromotion", "YearsWithCurrManager"};
  return kFeatures;
}

namespace {

// RFC 4180 record splitter. Returns false at end of input.
bool read_record(std::istream& in, std::vector<std::string>& fields, std::size_t& line_no,
                 const std::string& source) {
  fields.clear();
  std::string field;
  bool in_quotes = false;
  bool any = false;
  const std::size_t start_line = line_no + 1;
  char c;
  while (in.get(c)) {
    any = true;
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          field.push_back('"');
          in.get();
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line_no;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\r') {
      // tolerated before '\n'
    } else if (c == '\n') {
      ++line_no;
      fields.push_back(std::move(field));
      return true;
    } else {
      field.push_back(c);
    }
  }
  if (in_quotes) {
    throw ParseError(source + ": unterminated quoted field starting on line " +
                     std::to_string(start_line));
  }
  if (!any) return false;
  ++line_no;
  fields.push_back(std::move(field));
  return true;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::optional<std::size_t> RawDataset::find_column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) return std::nullopt;
  return static_cast<std::size_t>(it - columns.begin());
}

std::size_t RawDataset::column_index(const std::string& name) const {
  if (auto idx = find_column(name)) return *idx;
  throw SchemaError("unknown column \"" + name + "\"");
}

double RawDataset::numeric(std::size_t row, std::size_t column) const {
  const std::string cell = trim(rows.at(row).at(column));
  const std::string where =
      "row " + std::to_string(row + 1) + ", column \"" + columns.at(column) + "\"";
  if (cell.empty()) throw ParseError("missing value at " + where);
  double value = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw ParseError("non-numeric value \"" + cell + "\" at " + where);
  }
  return value;
}

RawDataset parse_csv(std::istream& in, const std::string& source_name,
                     const std::vector<std::string>& expected_columns) {
  RawDataset raw;
  std::size_t line_no = 0;
  std::vector<std::string> fields;
  if (!read_record(in, fields, line_no, source_name)) {
    throw ParseError(source_name + ": empty file, expected a header row");
  }
  for (auto& f : fields) raw.columns.push_back(trim(f));
  if (!raw.columns.empty() && raw.columns.front().rfind("\xEF\xBB\xBF", 0) == 0) {
    raw.columns.front().erase(0, 3);
  }
  std::set<std::string> seen;
  for (const auto& c : raw.columns) {
    if (!seen.insert(c).second) throw ParseError(source_name + ": duplicate column \"" + c + "\"");
  }
  for (const auto& want : expected_columns) {
    if (!seen.count(want)) {
      throw SchemaError(source_name + ": missing expected column \"" + want + "\"");
    }
  }
  while (read_record(in, fields, line_no, source_name)) {
    if (fields.size() == 1 && trim(fields[0]).empty()) continue;  // blank line
    if (fields.size() != raw.columns.size()) {
      throw ParseError(source_name + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(raw.columns.size()) + " fields, found " +
                       std::to_string(fields.size()));
    }
    raw.rows.push_back(fields);
  }
  return raw;
}

RawDataset load_csv(const std::filesystem::path& path,
                    const std::vector<std::string>& expected_columns) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open data file " + path.string());
  return parse_csv(in, path.string(), expected_columns);
}

std::size_t LabeledData::count(int label) const {
  return static_cast<std::size_t>(std::count(y.begin(), y.end(), label));
}

LabeledData LabeledData::subset(std::span<const std::size_t> indices) const {
  LabeledData out;
  out.X = X.select_rows(indices);
  out.y.reserve(indices.size());
  out.row_ids.reserve(indices.size());
  for (auto i : indices) {
    out.y.push_back(y.at(i));
    out.row_ids.push_back(row_ids.at(i));
  }
  return out;
}

LabeledData prepare(const RawDataset& raw, const PrepareOptions& options) {
  if (options.features.empty()) throw SchemaError("no features selected");
  std::vector<std::size_t> feature_cols;
  for (const auto& f : options.features) {
    const auto idx = raw.find_column(f);
    if (!idx) throw SchemaError("unknown feature \"" + f + "\"");
    feature_cols.push_back(*idx);
  }
  const std::size_t target_col = raw.column_index(options.target_column);

  std::optional<std::size_t> dept_col;
  if (!options.department.empty()) dept_col = raw.column_index(options.department_column);

  std::set<std::string> categories;
  for (const auto& r : raw.rows) categories.insert(trim(r[target_col]));
  if (raw.n_rows() > 0 && categories.size() != 2) {
    throw SchemaError("target column \"" + options.target_column + "\" must have exactly two "
                      "distinct values, found " + std::to_string(categories.size()));
  }
  if (raw.n_rows() > 0 && !categories.count(options.attrition_value)) {
    throw SchemaError("target column \"" + options.target_column + "\" has no value \"" +
                      options.attrition_value + "\"");
  }

  LabeledData out;
  out.X = Matrix(0, feature_cols.size());
  Vector values(feature_cols.size());
  for (std::size_t r = 0; r < raw.n_rows(); ++r) {
    const auto& row = raw.rows[r];
    if (dept_col && trim(row[*dept_col]) != options.department) continue;
    for (std::size_t j = 0; j < feature_cols.size(); ++j) values[j] = raw.numeric(r, feature_cols[j]);
    out.X.append_row(values);
    out.y.push_back(trim(row[target_col]) == options.attrition_value ? kAttrition : kRetention);
    out.row_ids.push_back(r);
  }
  if (out.size() == 0) {
    throw EmptySelectionError(dept_col ? "no rows with " + options.department_column + " = \"" +
                                             options.department + "\""
                                       : std::string("data file has no rows"));
  }
  return out;
}

Scaler::Scaler(Vector means, Vector stds) : means_(std::move(means)), stds_(std::move(stds)) {
  if (means_.size() != stds_.size()) throw SchemaError("Scaler: means/stds length mismatch");
  for (double s : stds_) {
    if (!(s >= kMinStd)) throw SchemaError("Scaler: standard deviation below minimum");
  }
}

std::vector<bool> Scaler::constant_columns() const {
  std::vector<bool> out(stds_.size());
  for (std::size_t j = 0; j < stds_.size(); ++j) out[j] = stds_[j] <= kMinStd;
  return out;
}

Vector Scaler::standardize(std::span<const double> v) const {
  Vector out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) out[j] = (v[j] - means_[j]) / stds_[j];
  return out;
}

Vector Scaler::destandardize(std::span<const double> z) const {
  Vector out(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) out[j] = z[j] * stds_[j] + means_[j];
  return out;
}

Matrix Scaler::standardize(const Matrix& X) const {
  if (X.cols() != size()) throw SchemaError("Scaler: matrix width does not match");
  Matrix out(X.rows(), X.cols());
  for (std::size_t i = 0; i < X.rows(); ++i) {
    for (std::size_t j = 0; j < X.cols(); ++j) out(i, j) = (X(i, j) - means_[j]) / stds_[j];
  }
  return out;
}

Vector Scaler::destandardize_delta(std::span<const double> delta_std) const {
  if (delta_std.size() != size()) throw SchemaError("Scaler: delta length does not match");
  Vector out(delta_std.size());
  for (std::size_t j = 0; j < delta_std.size(); ++j) out[j] = delta_std[j] * stds_[j];
  return out;
}

Scaler standardize_fit(const Matrix& X) {
  if (X.rows() < 2) throw SchemaError("standardize_fit: need at least two rows");
  const std::size_t n = X.rows();
  const std::size_t d = X.cols();
  Vector means(d, 0.0), stds(d, 0.0);
  for (std::size_t j = 0; j < d; ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += X(i, j);
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) ss += (X(i, j) - mean) * (X(i, j) - mean);
    means[j] = mean;
    stds[j] = std::sqrt(ss / static_cast<double>(n - 1));
    if (!(stds[j] > kMinStd)) {
      stds[j] = kMinStd;
      log_warning("column " + std::to_string(j) +
                  " is constant; clamping its scale and marking it non-actionable");
    }
  }
  return Scaler(std::move(means), std::move(stds));
}

Matrix standardize_apply(const Matrix& X, const Scaler& scaler) { return scaler.standardize(X); }

Vector destandardize_delta(std::span<const double> delta_std, const Scaler& scaler) {
  return scaler.destandardize_delta(delta_std);
}

std::optional<std::size_t> FeatureSchema::find(const std::string& name) const {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names.begin());
}

std::size_t FeatureSchema::index_of(const std::string& name) const {
  if (auto idx = find(name)) return *idx;
  throw SchemaError("unknown feature \"" + name + "\"");
}

void FeatureSchema::validate() const {
  const std::size_t d = names.size();
  if (d == 0) throw SchemaError("schema has no features");
  if (actionable.size() != d || means.size() != d || stds.size() != d) {
    throw SchemaError("schema field lengths differ");
  }
  std::set<std::string> unique(names.begin(), names.end());
  if (unique.size() != d) throw SchemaError("schema feature names are not unique");
  for (double s : stds) {
    if (!(s >= kMinStd)) throw SchemaError("schema standard deviation below minimum");
  }
}

FeatureSchema make_schema(const std::vector<std::string>& names, const Scaler& scaler) {
  FeatureSchema schema;
  schema.names = names;
  schema.means = scaler.means();
  schema.stds = scaler.stds();
  const auto constant = scaler.constant_columns();
  schema.actionable.resize(names.size());
  for (std::size_t j = 0; j < names.size() && j < constant.size(); ++j) {
    schema.actionable[j] = !constant[j];
  }
  schema.validate();
  return schema;
}

LabeledData undersample_majority(const LabeledData& data, std::uint64_t seed) {
  const std::size_t neg = data.count(kAttrition);
  const std::size_t pos = data.count(kRetention);
  if (neg == 0 || pos == 0) throw SchemaError("undersample_majority: both classes must be present");
  const int majority = pos > neg ? kRetention : kAttrition;
  const std::size_t keep = std::min(neg, pos);

  std::vector<std::size_t> majority_rows;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data.y[i] == majority) majority_rows.push_back(i);
  }
  Rng rng(seed);
  const auto perm = rng.permutation(majority_rows.size());
  std::vector<bool> selected(data.size(), false);
  for (std::size_t i = 0; i < data.size(); ++i) selected[i] = data.y[i] != majority;
  for (std::size_t k = 0; k < keep; ++k) selected[majority_rows[perm[k]]] = true;

  std::vector<std::size_t> indices;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (selected[i]) indices.push_back(i);
  }
  return data.subset(indices);
}

Split train_test_split(const LabeledData& data, double ratio, std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw SchemaError("train_test_split: ratio must be in (0, 1)");
  if (data.size() < 2) throw SchemaError("train_test_split: need at least two rows");
  Rng rng(seed);
  const auto perm = rng.permutation(data.size());
  const auto n_train =
      static_cast<std::size_t>(std::floor(ratio * static_cast<double>(data.size())));
  std::vector<std::size_t> train(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_train));
  std::vector<std::size_t> test(perm.begin() + static_cast<std::ptrdiff_t>(n_train), perm.end());
  return {data.subset(train), data.subset(test)};
}

ExperimentData build_experiment_data(const RawDataset& raw, const PrepareOptions& options,
                                     double split_ratio, std::uint64_t seed) {
  const LabeledData unscaled = prepare(raw, options);
  Split split = train_test_split(unscaled, split_ratio, seed);
  const Scaler scaler = standardize_fit(split.train.X);

  ExperimentData out;
  out.schema = make_schema(options.features, scaler);
  out.all = unscaled;
  out.all.X = scaler.standardize(unscaled.X);
  out.train = std::move(split.train);
  out.train.X = scaler.standardize(out.train.X);
  out.test = std::move(split.test);
  out.test.X = scaler.standardize(out.test.X);
  out.train_balanced = undersample_majority(out.train, seed);
  return out;
}

}  // namespace groupcf
