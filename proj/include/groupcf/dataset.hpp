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

#ifndef GROUPCF_DATASET_HPP_
#define GROUPCF_DATASET_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "groupcf/matrix.hpp"

namespace groupcf {

// The eight policy-controllable features of the IBM HR attrition data used by
// default.
const std::vector<std::string>& DefaultFeatures();
inline constexpr const char* kDefaultDepartment = "Research & Development";
inline constexpr const char* kDefaultTargetColumn = "Attrition";
inline constexpr const char* kDefaultDepartmentColumn = "Department";

// Label convention used throughout: attrition is the negative class.
inline constexpr int kAttrition = -1;
inline constexpr int kRetention = +1;

// Smallest admissible scale. Constant columns are clamped to this value.
inline constexpr double kMinStd = 1e-12;

// A CSV file held as text cells. Every row has the header's width.
struct RawDataset {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::size_t n_rows() const { return rows.size(); }
  std::optional<std::size_t> find_column(const std::string& name) const;
  // Throws SchemaError when the column does not exist.
  std::size_t column_index(const std::string& name) const;
  // Parses a cell as a real number. Throws ParseError naming the row (1-based,
  // header excluded) and column for empty or non-numeric cells.
  double numeric(std::size_t row, std::size_t column) const;
};

RawDataset load_csv(const std::filesystem::path& path,
                    const std::vector<std::string>& expected_columns = {});
RawDataset parse_csv(std::istream& in, const std::string& source_name,
                     const std::vector<std::string>& expected_columns = {});

// Feature matrix with labels in {-1, +1} and the source row of each instance
// (0-based data row of the CSV).
struct LabeledData {
  Matrix X;
  std::vector<int> y;
  std::vector<std::size_t> row_ids;

  std::size_t size() const { return y.size(); }
  std::size_t count(int label) const;
  LabeledData subset(std::span<const std::size_t> indices) const;
};

struct PrepareOptions {
  std::string department = kDefaultDepartment;  // empty disables the filter
  std::vector<std::string> features = DefaultFeatures();
  std::string target_column = kDefaultTargetColumn;
  std::string department_column = kDefaultDepartmentColumn;
  std::string attrition_value = "Yes";
};

// Filters to the department, extracts the feature columns as reals and encodes
// the target (attrition -> -1, anything else -> +1). Row order is preserved.
LabeledData prepare(const RawDataset& raw, const PrepareOptions& options);

class Scaler {
 public:
  Scaler() = default;
  Scaler(Vector means, Vector stds);

  const Vector& means() const { return means_; }
  const Vector& stds() const { return stds_; }
  std::size_t size() const { return means_.size(); }
  // Columns whose spread was clamped to kMinStd during fitting.
  std::vector<bool> constant_columns() const;

  Vector standardize(std::span<const double> v) const;
  Vector destandardize(std::span<const double> z) const;
  Matrix standardize(const Matrix& X) const;
  // A delta is a difference of two points, so only the scale applies.
  Vector destandardize_delta(std::span<const double> delta_std) const;

  friend bool operator==(const Scaler&, const Scaler&) = default;

 private:
  Vector means_;
  Vector stds_;
};

// Column means and sample (n - 1) standard deviations. Requires n >= 2.
// Constant columns are clamped to kMinStd with a warning.
Scaler standardize_fit(const Matrix& X);
Matrix standardize_apply(const Matrix& X, const Scaler& scaler);
Vector destandardize_delta(std::span<const double> delta_std, const Scaler& scaler);

struct FeatureSchema {
  std::vector<std::string> names;
  std::vector<bool> actionable;
  Vector means;
  Vector stds;

  std::size_t size() const { return names.size(); }
  std::optional<std::size_t> find(const std::string& name) const;
  // Throws SchemaError on unknown names.
  std::size_t index_of(const std::string& name) const;
  // Throws SchemaError when an invariant is violated.
  void validate() const;
  Scaler scaler() const { return Scaler(means, stds); }
};

// Constant columns are flagged non-actionable.
FeatureSchema make_schema(const std::vector<std::string>& names, const Scaler& scaler);

// Keeps every minority row and an equally sized uniform sample of the majority
// rows. Selected rows keep their original relative order.
LabeledData undersample_majority(const LabeledData& data, std::uint64_t seed);

struct Split {
  LabeledData train;
  LabeledData test;
};

// floor(ratio * n) shuffled rows go to train, the rest to test.
Split train_test_split(const LabeledData& data, double ratio, std::uint64_t seed);

// Everything the experiment needs from one CSV: department rows standardized
// with a scaler fit on the training split, plus the balanced training set.
struct ExperimentData {
  FeatureSchema schema;
  LabeledData all;  // standardized, every filtered row
  LabeledData train;
  LabeledData test;
  LabeledData train_balanced;
};

ExperimentData build_experiment_data(const RawDataset& raw, const PrepareOptions& options,
                                     double split_ratio, std::uint64_t seed);

}  // namespace groupcf

#endif  // GROUPCF_DATASET_HPP_
