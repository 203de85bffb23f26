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

#include "doctest.h"
#include "groupcf/diversity.hpp"
#include "groupcf/errors.hpp"
#include "groupcf/group_lp.hpp"
#include "groupcf/io.hpp"
#include "groupcf/report.hpp"
#include "test_support.hpp"

using namespace groupcf;

TEST_CASE("io: logistic model round trip") {
  LinearScorer lin({0.1, -2.5, 1.0 / 3.0}, 0.7);
  auto doc = model_to_json(lin, {"a", "b", "c"});
  auto loaded = model_from_json(Json::parse(doc.dump()));
  REQUIRE(loaded.scorer->kind() == "logistic");
  const auto& back = dynamic_cast<const LinearScorer&>(*loaded.scorer);
  CHECK(back.weights() == lin.weights());
  CHECK(back.bias() == lin.bias());
  CHECK(loaded.feature_names == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("io: forest round trip") {
  LabeledData d;
  d.X = Matrix{{0.0, 1.0}, {1.0, 0.0}, {2.0, 2.0}, {3.0, 1.0}, {4.0, 0.5}, {5.0, 3.0}};
  d.y = {-1, -1, 1, -1, 1, 1};
  d.row_ids = {0, 1, 2, 3, 4, 5};
  auto forest = train_forest(d, {4, 2, 3, true});
  auto loaded = model_from_json(Json::parse(model_to_json(forest, {"x", "y"}).dump()));
  const auto& back = dynamic_cast<const ForestScorer&>(*loaded.scorer);
  CHECK(back.trees() == forest.trees());
  CHECK(back.dim() == 2);
}

TEST_CASE("io: malformed documents are rejected") {
  LinearScorer lin({1.0}, 0.0);
  auto doc = model_to_json(lin, {"a"});
  auto bad = doc;
  bad["version"] = 99;
  CHECK_THROWS_AS(model_from_json(bad), SchemaError);
  bad = doc;
  bad["format"] = kReportFormat;
  CHECK_THROWS_AS(model_from_json(bad), SchemaError);
  bad = doc;
  bad["weights"] = Json::array({1.0, 2.0});
  CHECK_THROWS_AS(model_from_json(bad), Error);
  CHECK_THROWS_AS(check_format(Json::array(), kModelFormat), SchemaError);
}

TEST_CASE("io: schema round trip") {
  auto schema = make_schema({"a", "b"}, Scaler({1.0, 2.0}, {0.5, kMinStd}));
  auto back = schema_from_json(Json::parse(schema_to_json(schema).dump()));
  CHECK(back.names == schema.names);
  CHECK(back.actionable == schema.actionable);
  CHECK(back.means == schema.means);
  CHECK(back.stds == schema.stds);
}

TEST_CASE("io: report round trip and stable bytes") {
  LinearScorer lin({1.0, 0.5}, 0.0);
  auto set = testing::make_set(Matrix{{-2.0, 0.3}, {-0.1, -1.0}});
  auto ex = diverse_explanations(set, lin, 2,
                                 make_c_grid_solver({0.1, 1.0}, [](double C) { return make_lp_solver(C); }, 0.8));
  Scaler scaler({1.0, 2.0}, {3.0, 0.7});
  auto schema = make_schema({"MonthlyIncome", "JobSatisfaction"}, scaler);
  auto rep = render_report(ex, scaler, schema, compute_baseline(set, scaler), set.size());
  rep.meta.features = schema.names;
  rep.meta.C_grid = {0.1, 1.0};
  rep.meta.seed = 42;
  rep.instance_row_ids = set.row_ids;

  auto back = report_from_json(Json::parse(report_to_json(rep).dump()));
  CHECK(back == rep);

  auto dir = testing::scratch_dir("io");
  write_json(dir / "a.json", report_to_json(rep));
  write_json(dir / "b.json", report_to_json(back));
  CHECK(testing::read_file(dir / "a.json") == testing::read_file(dir / "b.json"));
  CHECK(read_json(dir / "a.json") == report_to_json(rep));
  CHECK_THROWS_AS(read_json(dir / "missing.json"), Error);
}
