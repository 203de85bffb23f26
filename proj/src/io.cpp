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

#include "groupcf/io.hpp"

#include <fstream>

#include "groupcf/errors.hpp"

namespace groupcf {

void check_format(const Json& doc, const std::string& format) {
  if (!doc.is_object()) throw SchemaError("expected a JSON object for " + format);
  if (doc.value("format", std::string{}) != format) {
    throw SchemaError("document is not a " + format + " file");
  }
  if (doc.value("version", 0) != kFormatVersion) {
    throw SchemaError(format + ": unsupported version " + doc.value("version", Json(nullptr)).dump());
  }
}

Json model_to_json(const Scorer& scorer, const std::vector<std::string>& feature_names) {
  Json doc;
  doc["format"] = kModelFormat;
  doc["version"] = kFormatVersion;
  doc["kind"] = scorer.kind();
  doc["feature_names"] = feature_names;
  doc["dim"] = scorer.dim();
  if (const auto* linear = dynamic_cast<const LinearScorer*>(&scorer)) {
    doc["weights"] = linear->weights();
    doc["bias"] = linear->bias();
  } else if (const auto* forest = dynamic_cast<const ForestScorer*>(&scorer)) {
    Json trees = Json::array();
    for (const auto& t : forest->trees()) {
      trees.push_back({{"feature", t.feature},
                       {"threshold", t.threshold},
                       {"left", t.left},
                       {"right", t.right},
                       {"value", t.value}});
    }
    doc["trees"] = std::move(trees);
  } else {
    throw SchemaError("model_to_json: unsupported scorer kind " + scorer.kind());
  }
  return doc;
}

LoadedModel model_from_json(const Json& doc) {
  check_format(doc, kModelFormat);
  try {
    LoadedModel out;
    out.feature_names = doc.at("feature_names").get<std::vector<std::string>>();
    const auto dim = doc.at("dim").get<std::size_t>();
    const auto kind = doc.at("kind").get<std::string>();
    if (kind == "logistic") {
      out.scorer = std::make_unique<LinearScorer>(doc.at("weights").get<Vector>(),
                                                  doc.at("bias").get<double>());
    } else if (kind == "forest") {
      std::vector<DecisionTree> trees;
      for (const auto& t : doc.at("trees")) {
        DecisionTree tree;
        tree.feature = t.at("feature").get<std::vector<int>>();
        tree.threshold = t.at("threshold").get<Vector>();
        tree.left = t.at("left").get<std::vector<int>>();
        tree.right = t.at("right").get<std::vector<int>>();
        tree.value = t.at("value").get<Vector>();
        trees.push_back(std::move(tree));
      }
      out.scorer = std::make_unique<ForestScorer>(std::move(trees), dim);
    } else {
      throw SchemaError("unknown model kind \"" + kind + "\"");
    }
    if (out.scorer->dim() != dim || out.feature_names.size() != dim) {
      throw SchemaError("model dimension does not match its feature list");
    }
    return out;
  } catch (const Json::exception& e) {
    throw SchemaError(std::string("malformed model document: ") + e.what());
  }
}

Json schema_to_json(const FeatureSchema& schema) {
  Json doc;
  doc["format"] = kScalerFormat;
  doc["version"] = kFormatVersion;
  doc["feature_names"] = schema.names;
  doc["actionable"] = schema.actionable;
  doc["means"] = schema.means;
  doc["stds"] = schema.stds;
  return doc;
}

FeatureSchema schema_from_json(const Json& doc) {
  check_format(doc, kScalerFormat);
  try {
    FeatureSchema schema;
    schema.names = doc.at("feature_names").get<std::vector<std::string>>();
    schema.actionable = doc.at("actionable").get<std::vector<bool>>();
    schema.means = doc.at("means").get<Vector>();
    schema.stds = doc.at("stds").get<Vector>();
    schema.validate();
    return schema;
  } catch (const Json::exception& e) {
    throw SchemaError(std::string("malformed scaler document: ") + e.what());
  }
}

namespace {

Json meta_to_json(const RunMetadata& m) {
  return {{"seed", m.seed},
          {"classifier", m.classifier},
          {"department", m.department},
          {"features", m.features},
          {"C_grid", m.C_grid},
          {"k", m.k},
          {"margin", m.margin},
          {"coverage_target", m.coverage_target},
          {"weights", m.weights},
          {"blacklist", m.blacklist},
          {"explain_split", m.explain_split},
          {"split_ratio", m.split_ratio}};
}

RunMetadata meta_from_json(const Json& j) {
  RunMetadata m;
  m.seed = j.at("seed").get<std::uint64_t>();
  m.classifier = j.at("classifier").get<std::string>();
  m.department = j.at("department").get<std::string>();
  m.features = j.at("features").get<std::vector<std::string>>();
  m.C_grid = j.at("C_grid").get<std::vector<double>>();
  m.k = j.at("k").get<int>();
  m.margin = j.at("margin").get<double>();
  m.coverage_target = j.at("coverage_target").get<double>();
  m.weights = j.at("weights").get<std::vector<double>>();
  m.blacklist = j.at("blacklist").get<std::vector<std::string>>();
  m.explain_split = j.at("explain_split").get<std::string>();
  m.split_ratio = j.at("split_ratio").get<double>();
  return m;
}

Json delta_to_json(const DeltaRecord& d) {
  Json grid = Json::array();
  for (const auto& e : d.c_grid) {
    grid.push_back({{"C", e.C}, {"coverage", e.coverage}, {"objective", e.objective}, {"l1_cost", e.l1_cost}});
  }
  Json clauses = Json::array();
  for (const auto& c : d.clauses) clauses.push_back({{"feature", c.feature}, {"text", c.text}});
  return {{"delta_std", d.delta_std},
          {"delta_original_units", d.delta_original},
          {"coverage", d.coverage},
          {"flip_count", d.flip_count},
          {"sparsity", d.sparsity},
          {"l1_cost", d.l1_cost},
          {"objective", d.objective},
          {"C", d.C},
          {"solver", d.solver},
          {"blacklisted", d.blacklisted},
          {"c_grid", std::move(grid)},
          {"clauses", std::move(clauses)},
          {"narrative", d.narrative}};
}

DeltaRecord delta_from_json(const Json& j) {
  DeltaRecord d;
  d.delta_std = j.at("delta_std").get<Vector>();
  d.delta_original = j.at("delta_original_units").get<Vector>();
  d.coverage = j.at("coverage").get<double>();
  d.flip_count = j.at("flip_count").get<std::size_t>();
  d.sparsity = j.at("sparsity").get<std::size_t>();
  d.l1_cost = j.at("l1_cost").get<double>();
  d.objective = j.at("objective").get<double>();
  d.C = j.at("C").get<double>();
  d.solver = j.at("solver").get<std::string>();
  d.blacklisted = j.at("blacklisted").get<std::vector<std::string>>();
  for (const auto& e : j.at("c_grid")) {
    d.c_grid.push_back({e.at("C").get<double>(), e.at("coverage").get<double>(),
                        e.at("objective").get<double>(), e.at("l1_cost").get<double>()});
  }
  for (const auto& c : j.at("clauses")) {
    d.clauses.push_back({c.at("feature").get<std::string>(), c.at("text").get<std::string>()});
  }
  d.narrative = j.at("narrative").get<std::string>();
  return d;
}

}  // namespace

Json report_to_json(const ExplanationReport& report) {
  Json deltas = Json::array();
  for (const auto& d : report.deltas) deltas.push_back(delta_to_json(d));
  return {{"format", kReportFormat},
          {"version", kFormatVersion},
          {"run", meta_to_json(report.meta)},
          {"instance_count", report.instance_count},
          {"instance_row_ids", report.instance_row_ids},
          {"baseline_means", report.baseline_means},
          {"deltas", std::move(deltas)},
          {"termination", report.termination},
          {"final_blacklist", report.final_blacklist}};
}

ExplanationReport report_from_json(const Json& doc) {
  check_format(doc, kReportFormat);
  try {
    ExplanationReport r;
    r.meta = meta_from_json(doc.at("run"));
    r.instance_count = doc.at("instance_count").get<std::size_t>();
    r.instance_row_ids = doc.at("instance_row_ids").get<std::vector<std::size_t>>();
    r.baseline_means = doc.at("baseline_means").get<Vector>();
    for (const auto& d : doc.at("deltas")) r.deltas.push_back(delta_from_json(d));
    r.termination = doc.at("termination").get<std::string>();
    r.final_blacklist = doc.at("final_blacklist").get<std::vector<std::string>>();
    return r;
  } catch (const Json::exception& e) {
    throw SchemaError(std::string("malformed report document: ") + e.what());
  }
}

void write_json(const std::filesystem::path& path, const Json& doc) {
  write_text(path, doc.dump(2) + "\n");
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace groupcf
