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

// Command-line front end: train, explain, evaluate.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "groupcf/errors.hpp"
#include "groupcf/pipeline.hpp"

namespace {

using groupcf::RunConfig;

struct Flags {
  std::optional<std::string> config;
  std::optional<std::string> data;
  std::optional<std::string> department;
  std::optional<std::vector<std::string>> features;
  std::optional<std::string> target_column;
  std::optional<std::string> classifier;
  std::optional<std::vector<double>> C;
  std::optional<int> k;
  std::optional<double> margin;
  std::optional<std::vector<double>> weights;
  std::optional<std::vector<std::string>> blacklist;
  std::optional<std::uint64_t> seed;
  std::optional<double> split_ratio;
  std::optional<std::string> output_dir;
  std::optional<double> coverage_target;
  std::optional<std::string> explain_split;
  std::optional<std::string> loss;
  std::optional<std::string> model;
  std::optional<std::string> scaler;
  std::optional<std::string> report;
};

void add_run_options(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON config file (flags override it)");
  cmd->add_option("--data", f.data, "input CSV");
  cmd->add_option("--department", f.department, "department filter; empty disables it");
  cmd->add_option("--features", f.features, "comma-separated feature columns")->delimiter(',');
  cmd->add_option("--target-column", f.target_column, "label column");
  cmd->add_option("--classifier", f.classifier, "logistic or forest")
      ->check(CLI::IsMember({"logistic", "forest"}));
  cmd->add_option("--C", f.C, "regularization strength or comma-separated grid")->delimiter(',');
  cmd->add_option("--k", f.k, "number of diverse explanations")->check(CLI::PositiveNumber);
  cmd->add_option("--margin", f.margin, "strict flip margin (standardized score units)");
  cmd->add_option("--weights", f.weights, "per-feature L1 weights, feature order")->delimiter(',');
  cmd->add_option("--blacklist", f.blacklist, "features that may not change")->delimiter(',');
  cmd->add_option("--seed", f.seed, "seed for split, undersampling and forests");
  cmd->add_option("--split-ratio", f.split_ratio, "training fraction");
  cmd->add_option("--output-dir", f.output_dir, "directory for model, scaler, manifest, report");
  cmd->add_option("--coverage-target", f.coverage_target, "coverage used to pick C from the grid");
  cmd->add_option("--explain-split", f.explain_split, "rows to explain: all, train or test")
      ->check(CLI::IsMember({"all", "train", "test"}));
  cmd->add_option("--loss", f.loss, "penalized loss: squared-hinge or cross-entropy")
      ->check(CLI::IsMember({"squared-hinge", "cross-entropy"}));
}

RunConfig resolve(const Flags& f) {
  RunConfig c = f.config ? groupcf::load_config(*f.config) : RunConfig{};
  if (f.data) c.data_path = *f.data;
  if (f.department) c.department = *f.department;
  if (f.features) c.features = *f.features;
  if (f.target_column) c.target_column = *f.target_column;
  if (f.classifier) c.classifier = *f.classifier;
  if (f.C) c.C_grid = *f.C;
  if (f.k) c.k = *f.k;
  if (f.margin) c.margin = *f.margin;
  if (f.weights) c.weights = *f.weights;
  if (f.blacklist) c.blacklist = *f.blacklist;
  if (f.seed) c.seed = *f.seed;
  if (f.split_ratio) c.split_ratio = *f.split_ratio;
  if (f.output_dir) c.output_dir = *f.output_dir;
  if (f.coverage_target) c.coverage_target = *f.coverage_target;
  if (f.explain_split) c.explain_split = *f.explain_split;
  if (f.loss) c.loss = *f.loss;
  c.validate();
  return c;
}

groupcf::ExplainPaths paths_for(const Flags& f, const RunConfig& c) {
  return {f.model ? std::filesystem::path(*f.model) : c.model_path(),
          f.scaler ? std::filesystem::path(*f.scaler) : c.scaler_path()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Group counterfactual explanations of employee attrition"};
  app.require_subcommand(1);
  Flags flags;

  auto* train = app.add_subcommand("train", "train the classifier and write model, scaler, manifest");
  add_run_options(train, flags);

  auto* explain = app.add_subcommand("explain", "compute diverse group counterfactuals");
  add_run_options(explain, flags);
  explain->add_option("--model", flags.model, "model JSON (default <output-dir>/model.json)");
  explain->add_option("--scaler", flags.scaler, "scaler JSON (default <output-dir>/scaler.json)");

  auto* evaluate = app.add_subcommand("evaluate", "audit a report against data and model");
  add_run_options(evaluate, flags);
  evaluate->add_option("--model", flags.model, "model JSON (default <output-dir>/model.json)");
  evaluate->add_option("--scaler", flags.scaler, "scaler JSON (default <output-dir>/scaler.json)");
  evaluate->add_option("--report", flags.report, "report JSON (default <output-dir>/report.json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? groupcf::kExitOk : groupcf::kExitError;
  }

  try {
    const RunConfig config = resolve(flags);
    if (train->parsed()) {
      const auto r = groupcf::cmd_train(config);
      std::cout << "rows in file: " << r.n_file_rows << ", selected: " << r.n_selected_rows
                << "\ntrain: " << r.n_train << " (balanced " << r.n_train_balanced
                << "), test: " << r.n_test << "\nclassifier: " << r.classifier << " ("
                << r.selected_params << "), test accuracy: " << r.test_accuracy
                << "\nwrote " << config.model_path().string() << ", " << config.scaler_path().string()
                << ", " << config.manifest_path().string() << "\n";
      return groupcf::kExitOk;
    }
    if (explain->parsed()) {
      const auto report = groupcf::cmd_explain(config, paths_for(flags, config));
      std::cout << groupcf::render_text(report) << "wrote " << config.report_path().string()
                << ", " << config.text_report_path().string() << "\n";
      return groupcf::kExitOk;
    }
    const auto audit = groupcf::cmd_evaluate(
        config, paths_for(flags, config),
        flags.report ? std::filesystem::path(*flags.report) : config.report_path());
    for (const auto& line : audit.lines) {
      std::cout << (line.passed ? "PASS " : "FAIL ")
                << (line.delta_index < 0 ? std::string("report") : "delta " + std::to_string(line.delta_index + 1))
                << " " << line.check << ": " << line.detail << "\n";
    }
    return audit.passed() ? groupcf::kExitOk : groupcf::kExitAuditFailure;
  } catch (const groupcf::NothingToExplainError& e) {
    std::cerr << e.what() << "\n";
    return groupcf::kExitNothingToExplain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return groupcf::kExitError;
  }
}
