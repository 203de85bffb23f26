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

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "groupcf/diversity.hpp"
#include "groupcf/errors.hpp"
#include "groupcf/group_lp.hpp"
#include "groupcf/report.hpp"
#include "test_support.hpp"

using namespace groupcf;

namespace {

struct Fixture {
  FeatureSchema schema;
  Scaler scaler;
  GroupBaseline baseline;
  Fixture() {
    scaler = Scaler({11.0, 2.5, 2.0}, {4.0, 1.1, 2.5});
    schema = make_schema({"PercentSalaryHike", "JobSatisfaction", "YearsSinceLastPromotion"}, scaler);
    baseline.means = {15.0, 2.0, 6.0};
  }
};

GroupDelta delta_of(Vector v, std::vector<bool> flipped) {
  GroupDelta g;
  g.delta = std::move(v);
  g.mask = full_mask(g.delta.size());
  g.flipped = std::move(flipped);
  g.C = 1.0;
  g.solver = "lp";
  return g;
}

}  // namespace

TEST_CASE("coverage") {
  LinearScorer lin({1.0, 0.0}, 0.0);
  auto set = testing::make_set(Matrix{{-1.0, 0.0}, {-3.0, 0.0}});
  CHECK(coverage(Vector{0.0, 0.0}, set, lin) == 0.0);
  CHECK(coverage(Vector{3.0, 0.0}, set, lin) == 1.0);
  CHECK(coverage(Vector{2.0, 0.0}, set, lin) == 0.5);
  CHECK_THROWS_AS(coverage(Vector{0.0, 0.0}, testing::make_set(Matrix(0, 2)), lin), SchemaError);
}

TEST_CASE("format_approx") {
  CHECK(format_approx(5.0) == "5");
  CHECK(format_approx(4.96) == "5");
  CHECK(format_approx(0.4012) == "0.4");
  CHECK(format_approx(41.7) == "42");
  CHECK(format_approx(8.78) == "8.8");
  CHECK(format_approx(1234.0) == "1200");
}

TEST_CASE("narratives") {
  Fixture f;
  ExplanationSet ex;
  ex.deltas.push_back(delta_of({0.0, 0.0, 0.0}, {false, false}));
  auto rep = render_report(ex, f.scaler, f.schema, f.baseline, 2);
  CHECK(rep.deltas[0].narrative.find("no change required") != std::string::npos);
  CHECK(rep.deltas[0].narrative.find("coverage 0.0%") != std::string::npos);
  CHECK(rep.deltas[0].sparsity == 0);

  ex.deltas.clear();
  ex.deltas.push_back(delta_of({0.0, 0.0, -5.0 / 2.5}, {true, true}));
  rep = render_report(ex, f.scaler, f.schema, f.baseline, 2);
  CHECK(rep.deltas[0].delta_original[2] == doctest::Approx(-5.0));
  CHECK(rep.deltas[0].narrative.find("5 years less since their last promotion") != std::string::npos);

  ex.deltas.clear();
  ex.deltas.push_back(delta_of({1.5, 0.5, 0.0}, {true, false}));
  rep = render_report(ex, f.scaler, f.schema, f.baseline, 2);
  const auto& n = rep.deltas[0].narrative;
  CHECK(n.find(" AND ") != std::string::npos);
  CHECK(n.find("an increase in Percent Salary Hike") != std::string::npos);
  CHECK(n.find("an increase in Job Satisfaction") != std::string::npos);
  CHECK(n.find("Percent Salary Hike") < n.find("Job Satisfaction"));
  // +6 from a group mean of 15 is 40%.
  CHECK(n.find("approx. 40%") != std::string::npos);
  CHECK(rep.deltas[0].coverage == 0.5);
  CHECK(rep.deltas[0].flip_count == 1);
}

TEST_CASE("clauses mention exactly the support; cost is the weighted L1") {
  Fixture f;
  const Vector weights{2.0, 1.0, 0.5};
  for (const Vector& d : {Vector{0.3, 0.0, 0.0}, Vector{0.0, -0.7, 1e-12}, Vector{0.1, 0.2, -0.3}}) {
    ExplanationSet ex;
    ex.deltas.push_back(delta_of(d, {true}));
    auto rep = render_report(ex, f.scaler, f.schema, f.baseline, 1, weights);
    const auto& rec = rep.deltas[0];
    std::vector<std::string> named;
    for (const auto& c : rec.clauses) named.push_back(c.feature);
    std::vector<std::string> expected;
    for (auto j : support(d)) expected.push_back(f.schema.names[j]);
    std::sort(named.begin(), named.end());
    std::sort(expected.begin(), expected.end());
    CHECK(named == expected);
    CHECK(rec.sparsity == expected.size());
    CHECK(std::abs(rec.l1_cost - weighted_l1(d, weights)) <= 1e-9);
  }
}

TEST_CASE("recorded flips agree with recomputed coverage") {
  LinearScorer lin({1.0, 2.0}, -0.5);
  auto set = testing::make_set(Matrix{{-1.0, 0.0}, {0.0, -1.0}, {-2.0, -2.0}});
  auto gd = make_lp_solver(1.0)(set, lin, full_mask(2));
  CHECK(coverage(gd.delta, set, lin) == static_cast<double>(gd.flip_count()) / set.size());
}

TEST_CASE("text rendering") {
  Fixture f;
  ExplanationSet ex;
  ex.deltas.push_back(delta_of({1.5, 0.5, 0.0}, {true, false}));
  auto rep = render_report(ex, f.scaler, f.schema, f.baseline, 2);
  rep.meta.features = f.schema.names;
  const auto text = render_text(rep);
  CHECK(text.find(rep.deltas[0].narrative) != std::string::npos);
  CHECK(text.find("PercentSalaryHike") != std::string::npos);
}
