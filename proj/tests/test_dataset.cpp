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
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "doctest.h"
#include "groupcf/dataset.hpp"
#include "groupcf/errors.hpp"
#include "test_support.hpp"

using namespace groupcf;

namespace {

RawDataset parse(const std::string& text, const std::vector<std::string>& expected = {}) {
  std::istringstream in(text);
  return parse_csv(in, "inline.csv", expected);
}

LabeledData toy_labeled(std::size_t n_majority, std::size_t n_minority) {
  LabeledData d;
  d.X = Matrix(n_majority + n_minority, 1);
  for (std::size_t i = 0; i < n_majority + n_minority; ++i) {
    d.X(i, 0) = static_cast<double>(i);
    d.y.push_back(i < n_majority ? kRetention : kAttrition);
    d.row_ids.push_back(i);
  }
  return d;
}

std::size_t count_lines(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line))
    if (!line.empty()) ++n;
  return n;
}

}  // namespace

TEST_CASE("csv: quoted fields, CRLF and BOM") {
  auto raw = parse("\xEF\xBB\xBFname,value\r\n\"a, b\",1\r\n\"say \"\"hi\"\"\",2\r\n");
  REQUIRE(raw.columns == std::vector<std::string>{"name", "value"});
  REQUIRE(raw.n_rows() == 2);
  CHECK(raw.rows[0][0] == "a, b");
  CHECK(raw.rows[1][0] == "say \"hi\"");
  CHECK(raw.numeric(1, 1) == 2.0);
}

TEST_CASE("csv: header-only file has zero rows") {
  auto raw = parse("a,b,c\n");
  CHECK(raw.columns.size() == 3);
  CHECK(raw.n_rows() == 0);
}

TEST_CASE("csv: errors carry location") {
  CHECK_THROWS_AS(parse("a,b\n1,2,3\n"), ParseError);
  CHECK_THROWS_AS(parse("a,b\n1,2\n", {"a", "Attrition"}), SchemaError);
  CHECK_THROWS_AS(load_csv("/nonexistent/file.csv"), Error);

  auto raw = parse("a,b\n1,2\n3,oops\n");
  try {
    raw.numeric(1, 1);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("row 2") != std::string::npos);
    CHECK(msg.find("b") != std::string::npos);
  }
  CHECK_THROWS_AS(parse("a,b\n1,\n").numeric(0, 1), ParseError);
}

TEST_CASE("IBM file loads with every row") {
  auto raw = load_csv(testing::data_file());
  CHECK(raw.columns.size() == 35);
  CHECK(raw.n_rows() == count_lines(testing::data_file()) - 1);
  CHECK(raw.find_column("Attrition").has_value());
  CHECK(raw.find_column("Department").has_value());
}

TEST_CASE("prepare: department filter, features and labels") {
  auto raw = load_csv(testing::data_file());
  PrepareOptions opts;
  auto data = prepare(raw, opts);
  CHECK(data.X.cols() == 8);

  const auto dept = raw.column_index("Department");
  const auto target = raw.column_index("Attrition");
  std::size_t expected = 0;
  for (const auto& row : raw.rows)
    if (row[dept] == "Research & Development") ++expected;
  CHECK(data.size() == expected);

  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& row = raw.rows[data.row_ids[i]];
    CHECK(row[dept] == "Research & Development");
    CHECK(data.y[i] == (row[target] == "Yes" ? -1 : 1));
  }
  CHECK(std::is_sorted(data.row_ids.begin(), data.row_ids.end()));

  opts.department = "";
  CHECK(prepare(raw, opts).size() == raw.n_rows());

  opts.department = "Astrology";
  CHECK_THROWS_AS(prepare(raw, opts), EmptySelectionError);

  opts.department = "";
  opts.features = {"MonthlyIncome", "NoSuchColumn"};
  CHECK_THROWS_AS(prepare(raw, opts), SchemaError);
}

TEST_CASE("prepare: target must have two categories") {
  auto raw = parse("Department,f,Attrition\nA,1,Yes\nA,2,Yes\n");
  PrepareOptions opts;
  opts.department = "";
  opts.features = {"f"};
  CHECK_THROWS_AS(prepare(raw, opts), SchemaError);
}

TEST_CASE("scaler: sample standard deviation") {
  Matrix X{{1.0}, {2.0}, {3.0}};
  auto scaler = standardize_fit(X);
  auto Z = standardize_apply(X, scaler);
  CHECK(Z(0, 0) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(Z(1, 0) == doctest::Approx(0.0));
  CHECK(Z(2, 0) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK(destandardize_delta(Vector{0.0}, scaler) == Vector{0.0});
  Scaler s42({10.0}, {4.2});
  CHECK(destandardize_delta(Vector{1.0}, s42)[0] == doctest::Approx(4.2));

  CHECK_THROWS_AS(standardize_fit(Matrix{{1.0}}), Error);
}

TEST_CASE("scaler: constant column is clamped and non-actionable") {
  Matrix X{{1.0, 5.0}, {2.0, 5.0}, {3.0, 5.0}};
  auto scaler = standardize_fit(X);
  CHECK(scaler.stds()[1] == kMinStd);
  CHECK(scaler.constant_columns() == std::vector<bool>{false, true});
  auto schema = make_schema({"a", "b"}, scaler);
  CHECK(schema.actionable == std::vector<bool>{true, false});
}

TEST_CASE("scaler: round trip") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(-1000.0, 1000.0);
  Scaler scaler({3.0, -2.0, 1e4}, {0.5, 7.0, 2500.0});
  for (int t = 0; t < 200; ++t) {
    Vector v{u(gen), u(gen), u(gen) * 100};
    auto back = scaler.destandardize(scaler.standardize(v));
    for (std::size_t j = 0; j < v.size(); ++j) CHECK(std::abs(back[j] - v[j]) <= 1e-9 * std::max(1.0, std::abs(v[j])));
  }
}

TEST_CASE("undersampling") {
  auto d = toy_labeled(100, 20);
  auto bal = undersample_majority(d, 1);
  CHECK(bal.count(kRetention) == 20);
  CHECK(bal.count(kAttrition) == 20);

  std::multiset<std::size_t> minority;
  for (std::size_t i = 0; i < bal.size(); ++i)
    if (bal.y[i] == kAttrition) minority.insert(bal.row_ids[i]);
  std::multiset<std::size_t> expected;
  for (std::size_t i = 100; i < 120; ++i) expected.insert(i);
  CHECK(minority == expected);
  CHECK(std::is_sorted(bal.row_ids.begin(), bal.row_ids.end()));

  auto again = undersample_majority(d, 1);
  CHECK(again.row_ids == bal.row_ids);
  bool differs = false;
  for (std::uint64_t s = 2; s < 10 && !differs; ++s) differs = undersample_majority(d, s).row_ids != bal.row_ids;
  CHECK(differs);

  auto balanced = toy_labeled(30, 30);
  CHECK(undersample_majority(balanced, 3).row_ids == balanced.row_ids);

  CHECK_THROWS_AS(undersample_majority(toy_labeled(10, 0), 0), Error);
}

TEST_CASE("train/test split") {
  auto d = toy_labeled(6, 4);
  auto split = train_test_split(d, 0.8, 11);
  CHECK(split.train.size() == 8);
  CHECK(split.test.size() == 2);

  std::multiset<std::size_t> all(split.train.row_ids.begin(), split.train.row_ids.end());
  all.insert(split.test.row_ids.begin(), split.test.row_ids.end());
  std::multiset<std::size_t> original(d.row_ids.begin(), d.row_ids.end());
  CHECK(all == original);
  for (auto id : split.test.row_ids)
    CHECK(std::find(split.train.row_ids.begin(), split.train.row_ids.end(), id) == split.train.row_ids.end());

  auto again = train_test_split(d, 0.8, 11);
  CHECK(again.train.row_ids == split.train.row_ids);
  CHECK(again.test.row_ids == split.test.row_ids);

  CHECK_THROWS_AS(train_test_split(d, 0.0, 1), Error);
  CHECK_THROWS_AS(train_test_split(d, 1.0, 1), Error);
}

TEST_CASE("experiment data: scaler fit on the training split") {
  auto raw = load_csv(testing::data_file());
  auto exp = build_experiment_data(raw, PrepareOptions{}, 0.8, 0);
  CHECK(exp.train.size() + exp.test.size() == exp.all.size());
  CHECK(exp.train_balanced.count(kAttrition) == exp.train_balanced.count(kRetention));
  for (std::size_t j = 0; j < exp.train.X.cols(); ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < exp.train.size(); ++i) mean += exp.train.X(i, j);
    mean /= exp.train.size();
    double var = 0.0;
    for (std::size_t i = 0; i < exp.train.size(); ++i) var += std::pow(exp.train.X(i, j) - mean, 2);
    var /= exp.train.size() - 1;
    CHECK(std::abs(mean) < 1e-9);
    CHECK(var == doctest::Approx(1.0).epsilon(1e-9));
  }
}
