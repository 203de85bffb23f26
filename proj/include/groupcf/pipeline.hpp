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

#ifndef GROUPCF_PIPELINE_HPP_
#define GROUPCF_PIPELINE_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "groupcf/dataset.hpp"
#include "groupcf/io.hpp"
#include "groupcf/report.hpp"

namespace groupcf {

// Process exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNothingToExplain = 2;
inline constexpr int kExitAuditFailure = 3;

struct RunConfig {
  std::filesystem::path data_path = "data/ibm_hr_attrition.csv";
  std::string department = kDefaultDepartment;
  std::vector<std::string> features = DefaultFeatures();
  std::string target_column = kDefaultTargetColumn;
  std::string classifier = "logistic";  // logistic | forest
  std::vector<double> C_grid = {0.1, 1.0, 10.0, 100.0};
  int k = 3;
  double margin = 1e-4;
  std::vector<double> weights;  // empty: unit weights
  std::vector<std::string> blacklist;
  std::uint64_t seed = 0;
  double split_ratio = 0.8;
  std::filesystem::path output_dir = "out";
  double coverage_target = 0.8;
  std::string explain_split = "all";  // all | train | test
  std::string loss = "squared-hinge";

  // Hyper-parameter grids, selected by test accuracy.
  std::vector<double> l2_grid = {0.0, 1e-3, 1e-2, 1e-1, 1.0};
  int logistic_max_iter = 10000;
  double logistic_tol = 1e-6;
  std::vector<int> n_trees_grid = {50, 100};
  std::vector<int> depth_grid = {3, 5};

  // Throws SchemaError on invalid values.
  void validate() const;
  PrepareOptions prepare_options() const;

  std::filesystem::path model_path() const { return output_dir / "model.json"; }
  std::filesystem::path scaler_path() const { return output_dir / "scaler.json"; }
  std::filesystem::path manifest_path() const { return output_dir / "manifest.json"; }
  std::filesystem::path report_path() const { return output_dir / "report.json"; }
  std::filesystem::path text_report_path() const { return output_dir / "report.txt"; }
};

// Overlays the keys present in a JSON config document. Unknown keys are an
// error. "C" accepts a number or a list; "weights" a list in feature order or
// an object keyed by feature name.
void apply_config(RunConfig& config, const Json& doc);
RunConfig load_config(const std::filesystem::path& path);

struct TrainResult {
  std::string classifier;
  std::size_t n_file_rows = 0;
  std::size_t n_selected_rows = 0;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
  std::size_t n_train_balanced = 0;
  double test_accuracy = 0.0;
  std::string selected_params;
};

// Writes model.json, scaler.json and manifest.json into output_dir.
TrainResult cmd_train(const RunConfig& config);

struct ExplainPaths {
  std::filesystem::path model;
  std::filesystem::path scaler;
};

// Selects the predicted-attrition set, runs the diverse explanation loop with
// the solver for the model kind (LP for logistic, penalized search for forest)
// and writes report.json and report.txt. Throws NothingToExplainError when no
// instance is predicted as attrition.
ExplanationReport cmd_explain(const RunConfig& config, const ExplainPaths& paths);

struct AuditLine {
  int delta_index = -1;  // -1 for report-wide checks
  std::string check;
  bool passed = false;
  std::string detail;
};

struct AuditResult {
  std::vector<AuditLine> lines;
  bool passed() const;
};

// Recomputes coverage, sparsity, cost, unit conversion, mask and disjointness
// from the data and model and compares them with the report.
AuditResult cmd_evaluate(const RunConfig& config, const ExplainPaths& paths,
                         const std::filesystem::path& report_path);

}  // namespace groupcf

#endif  // GROUPCF_PIPELINE_HPP_
