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

#include "groupcf/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "groupcf/diversity.hpp"
#include "groupcf/errors.hpp"
#include "groupcf/group_lp.hpp"
#include "groupcf/models.hpp"
#include "groupcf/penalized.hpp"

namespace groupcf {

void RunConfig::validate() const {
  if (classifier != "logistic" && classifier != "forest") {
    throw SchemaError("classifier must be \"logistic\" or \"forest\", got \"" + classifier + "\"");
  }
  if (k < 1) throw SchemaError("k must be >= 1");
  if (features.empty()) throw SchemaError("no features configured");
  if (std::set<std::string>(features.begin(), features.end()).size() != features.size()) {
    throw SchemaError("feature names must be unique");
  }
  if (C_grid.empty()) throw SchemaError("C grid is empty");
  for (double c : C_grid) {
    if (!(c > 0.0) || !std::isfinite(c)) throw SchemaError("every C must be finite and > 0");
  }
  if (!(margin >= 0.0)) throw SchemaError("margin must be >= 0");
  if (!weights.empty()) {
    if (weights.size() != features.size()) throw SchemaError("weights must have one entry per feature");
    for (double w : weights) {
      if (!(w > 0.0)) throw SchemaError("weights must be positive");
    }
  }
  for (const auto& name : blacklist) {
    if (std::find(features.begin(), features.end(), name) == features.end()) {
      throw SchemaError("black-listed feature \"" + name + "\" is not among the features");
    }
  }
  if (!(split_ratio > 0.0 && split_ratio < 1.0)) throw SchemaError("split ratio must be in (0, 1)");
  if (!(coverage_target >= 0.0 && coverage_target <= 1.0)) {
    throw SchemaError("coverage target must be in [0, 1]");
  }
  if (explain_split != "all" && explain_split != "train" && explain_split != "test") {
    throw SchemaError("explain split must be all, train or test");
  }
  loss_kind_from_string(loss);
}

PrepareOptions RunConfig::prepare_options() const {
  PrepareOptions opts;
  opts.department = department;
  opts.features = features;
  opts.target_column = target_column;
  return opts;
}

void apply_config(RunConfig& config, const Json& doc) {
  if (!doc.is_object()) throw SchemaError("config must be a JSON object");
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "data_path") config.data_path = value.get<std::string>();
      else if (key == "department") config.department = value.get<std::string>();
      else if (key == "features") config.features = value.get<std::vector<std::string>>();
      else if (key == "target_column") config.target_column = value.get<std::string>();
      else if (key == "classifier") config.classifier = value.get<std::string>();
      else if (key == "C") {
        config.C_grid = value.is_array() ? value.get<std::vector<double>>()
                                         : std::vector<double>{value.get<double>()};
      } else if (key == "k") config.k = value.get<int>();
      else if (key == "margin") config.margin = value.get<double>();
      else if (key == "weights") {
        if (value.is_object()) {
          config.weights.assign(config.features.size(), 1.0);
          for (const auto& [name, w] : value.items()) {
            const auto it = std::find(config.features.begin(), config.features.end(), name);
            if (it == config.features.end()) throw SchemaError("weight for unknown feature \"" + name + "\"");
            config.weights[static_cast<std::size_t>(it - config.features.begin())] = w.get<double>();
          }
        } else {
          config.weights = value.get<std::vector<double>>();
        }
      } else if (key == "blacklist") config.blacklist = value.get<std::vector<std::string>>();
      else if (key == "seed") config.seed = value.get<std::uint64_t>();
      else if (key == "split_ratio") config.split_ratio = value.get<double>();
      else if (key == "output_dir") config.output_dir = value.get<std::string>();
      else if (key == "coverage_target") config.coverage_target = value.get<double>();
      else if (key == "explain_split") config.explain_split = value.get<std::string>();
      else if (key == "loss") config.loss = value.get<std::string>();
      else if (key == "l2_grid") config.l2_grid = value.get<std::vector<double>>();
      else if (key == "n_trees_grid") config.n_trees_grid = value.get<std::vector<int>>();
      else if (key == "depth_grid") config.depth_grid = value.get<std::vector<int>>();
      else throw SchemaError("unknown config key \"" + key + "\"");
    }
  } catch (const Json::exception& e) {
    throw SchemaError(std::string("invalid config value: ") + e.what());
  }
}

RunConfig load_config(const std::filesystem::path& path) {
  RunConfig config;
  apply_config(config, read_json(path));
  return config;
}

namespace {

std::vector<std::string> required_columns(const RunConfig& config) {
  std::vector<std::string> cols = config.features;
  cols.push_back(config.target_column);
  if (!config.department.empty()) cols.push_back(kDefaultDepartmentColumn);
  return cols;
}

Json row_ids_json(const LabeledData& data) { return data.row_ids; }

// Rows to explain, standardized with the trained scaler.
LabeledData explain_rows(const RunConfig& config, const PrepareOptions& opts,
                         const Scaler& scaler) {
  const RawDataset raw = load_csv(config.data_path, required_columns(config));
  LabeledData rows = prepare(raw, opts);
  if (config.explain_split != "all") {
    Split split = train_test_split(rows, config.split_ratio, config.seed);
    rows = config.explain_split == "train" ? std::move(split.train) : std::move(split.test);
  }
  rows.X = scaler.standardize(rows.X);
  return rows;
}

void check_features(const std::vector<std::string>& expected, const std::vector<std::string>& actual,
                    const std::string& what) {
  if (expected != actual) throw SchemaError(what + " feature list does not match the configuration");
}

}  // namespace

TrainResult cmd_train(const RunConfig& config) {
  config.validate();
  const RawDataset raw = load_csv(config.data_path, required_columns(config));
  const ExperimentData data =
      build_experiment_data(raw, config.prepare_options(), config.split_ratio, config.seed);
  if (data.test.size() == 0) throw SchemaError("test split is empty; lower the split ratio");

  TunedModel tuned = config.classifier == "logistic"
                         ? tune_logistic(data.train_balanced, data.test, config.l2_grid,
                                         config.logistic_max_iter, config.logistic_tol)
                         : tune_forest(data.train_balanced, data.test, config.n_trees_grid,
                                       config.depth_grid, config.seed);

  Json tuning = Json::array();
  for (const auto& g : tuned.grid) tuning.push_back({{"params", g.params}, {"test_accuracy", g.test_accuracy}});

  Json model = model_to_json(*tuned.scorer, data.schema.names);
  model["tuning"] = {{"grid", tuning}, {"selected", tuned.grid[tuned.selected].params}};
  write_json(config.model_path(), model);
  write_json(config.scaler_path(), schema_to_json(data.schema));

  Json manifest;
  manifest["format"] = kManifestFormat;
  manifest["version"] = kFormatVersion;
  manifest["data_path"] = config.data_path.generic_string();
  manifest["department"] = config.department;
  manifest["features"] = config.features;
  manifest["target_column"] = config.target_column;
  manifest["classifier"] = config.classifier;
  manifest["seed"] = config.seed;
  manifest["split_ratio"] = config.split_ratio;
  manifest["n_file_rows"] = raw.n_rows();
  manifest["n_selected_rows"] = data.all.size();
  manifest["train_rows"] = row_ids_json(data.train);
  manifest["test_rows"] = row_ids_json(data.test);
  manifest["balanced_train_rows"] = row_ids_json(data.train_balanced);
  manifest["tuning"] = model["tuning"];
  write_json(config.manifest_path(), manifest);

  TrainResult result;
  result.classifier = config.classifier;
  result.n_file_rows = raw.n_rows();
  result.n_selected_rows = data.all.size();
  result.n_train = data.train.size();
  result.n_test = data.test.size();
  result.n_train_balanced = data.train_balanced.size();
  result.test_accuracy = tuned.grid[tuned.selected].test_accuracy;
  result.selected_params = tuned.grid[tuned.selected].params;
  return result;
}

ExplanationReport cmd_explain(const RunConfig& config, const ExplainPaths& paths) {
  config.validate();
  const LoadedModel model = model_from_json(read_json(paths.model));
  const FeatureSchema schema = schema_from_json(read_json(paths.scaler));
  check_features(config.features, schema.names, "scaler");
  check_features(config.features, model.feature_names, "model");
  const Scaler scaler = schema.scaler();

  const LabeledData rows = explain_rows(config, config.prepare_options(), scaler);
  const InstanceSet set = select_attrition_set(*model.scorer, rows);

  Blacklist initial;
  for (const auto& name : config.blacklist) initial.features.insert(schema.index_of(name));
  for (std::size_t j = 0; j < schema.size(); ++j) {
    if (!schema.actionable[j]) initial.features.insert(j);
  }

  std::function<MaskedSolver(double)> factory;
  if (model.scorer->kind() == "logistic") {
    factory = [&](double C) { return make_lp_solver(C, config.margin, config.weights); };
  } else {
    factory = [&](double C) {
      PenalizedConfig cfg;
      cfg.C = C;
      cfg.loss = loss_kind_from_string(config.loss);
      cfg.weights = config.weights;
      cfg.margin = config.margin;
      return make_penalized_solver(cfg);
    };
  }
  const MaskedSolver solver =
      make_c_grid_solver(config.C_grid, factory, config.coverage_target, config.weights);
  const ExplanationSet explanations =
      diverse_explanations(set, *model.scorer, config.k, solver, kSupportTol, initial);

  ExplanationReport report = render_report(explanations, scaler, schema,
                                           compute_baseline(set, scaler), set.size(), config.weights);
  report.instance_row_ids = set.row_ids;
  auto& meta = report.meta;
  meta.seed = config.seed;
  meta.classifier = model.scorer->kind();
  meta.department = config.department;
  meta.features = config.features;
  meta.C_grid = config.C_grid;
  meta.k = config.k;
  meta.margin = config.margin;
  meta.coverage_target = config.coverage_target;
  meta.weights = config.weights;
  meta.blacklist = config.blacklist;
  meta.explain_split = config.explain_split;
  meta.split_ratio = config.split_ratio;

  write_json(config.report_path(), report_to_json(report));
  write_text(config.text_report_path(), render_text(report));
  return report;
}

bool AuditResult::passed() const {
  return std::all_of(lines.begin(), lines.end(), [](const AuditLine& l) { return l.passed; });
}

AuditResult cmd_evaluate(const RunConfig& config, const ExplainPaths& paths,
                         const std::filesystem::path& report_path) {
  const ExplanationReport report = report_from_json(read_json(report_path));
  const LoadedModel model = model_from_json(read_json(paths.model));
  const FeatureSchema schema = schema_from_json(read_json(paths.scaler));
  check_features(report.meta.features, schema.names, "scaler");
  check_features(report.meta.features, model.feature_names, "model");
  const Scaler scaler = schema.scaler();
  const std::size_t d = schema.size();

  RunConfig data_config = config;
  data_config.department = report.meta.department;
  data_config.features = report.meta.features;
  const RawDataset raw = load_csv(data_config.data_path, required_columns(data_config));
  LabeledData rows = prepare(raw, data_config.prepare_options());
  rows.X = scaler.standardize(rows.X);

  std::map<std::size_t, std::size_t> by_row_id;
  for (std::size_t i = 0; i < rows.size(); ++i) by_row_id[rows.row_ids[i]] = i;

  AuditResult audit;
  auto add = [&](int idx, std::string check, bool ok, std::string detail) {
    audit.lines.push_back({idx, std::move(check), ok, std::move(detail)});
  };

  InstanceSet set;
  set.X = Matrix(0, d);
  bool rows_found = true;
  for (auto id : report.instance_row_ids) {
    const auto it = by_row_id.find(id);
    if (it == by_row_id.end()) {
      rows_found = false;
      break;
    }
    set.X.append_row(rows.X.row(it->second));
    set.row_ids.push_back(id);
  }
  add(-1, "instance-rows", rows_found && set.size() == report.instance_count,
      std::to_string(set.size()) + " of " + std::to_string(report.instance_count) + " rows resolved");
  if (!rows_found || set.size() == 0) return audit;
  bool members_ok = true;
  std::string members_detail = "every instance predicted attrition";
  try {
    validate_instance_set(set, *model.scorer);
  } catch (const SchemaError& e) {
    members_ok = false;
    members_detail = e.what();
  }
  add(-1, "instance-predictions", members_ok, members_detail);

  std::set<std::size_t> used_before;
  for (std::size_t i = 0; i < report.deltas.size(); ++i) {
    const auto& rec = report.deltas[i];
    const int idx = static_cast<int>(i);
    if (rec.delta_std.size() != d || rec.delta_original.size() != d) {
      add(idx, "dimensions", false, "delta length differs from feature count");
      continue;
    }
    const auto flips = flip_record(rec.delta_std, set, *model.scorer);
    const auto hits = static_cast<std::size_t>(std::count(flips.begin(), flips.end(), true));
    const double cov = static_cast<double>(hits) / static_cast<double>(set.size());
    std::ostringstream msg;
    msg << "recomputed " << cov << ", reported " << rec.coverage;
    add(idx, "coverage", cov == rec.coverage && hits == rec.flip_count, msg.str());

    const auto used = support(rec.delta_std);
    add(idx, "sparsity", used.size() == rec.sparsity,
        "recomputed " + std::to_string(used.size()) + ", reported " + std::to_string(rec.sparsity));

    const double l1 = weighted_l1(rec.delta_std, report.meta.weights);
    msg.str("");
    msg << "recomputed " << l1 << ", reported " << rec.l1_cost;
    add(idx, "l1-cost", std::abs(l1 - rec.l1_cost) <= 1e-9, msg.str());

    const Vector orig = scaler.destandardize_delta(rec.delta_std);
    bool units_ok = true;
    for (std::size_t j = 0; j < d; ++j) {
      units_ok = units_ok && std::abs(orig[j] - rec.delta_original[j]) <= 1e-9 * std::max(1.0, std::abs(orig[j]));
    }
    add(idx, "original-units", units_ok, units_ok ? "consistent" : "delta_original_units mismatch");

    std::string mask_detail = "no change on black-listed features";
    bool mask_ok = true;
    for (const auto& name : rec.blacklisted) {
      const auto j = schema.find(name);
      if (!j || rec.delta_std[*j] != 0.0) {
        mask_ok = false;
        mask_detail = "black-listed feature " + name + (j ? " changed" : " unknown");
      }
    }
    add(idx, "mask", mask_ok, mask_detail);

    bool disjoint = true;
    for (auto j : used) disjoint = disjoint && !used_before.count(j);
    add(idx, "disjoint-support", disjoint, disjoint ? "disjoint from earlier deltas" : "reuses a feature");
    used_before.insert(used.begin(), used.end());
  }
  return audit;
}

}  // namespace groupcf
