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
#include <random>

#include "doctest.h"
#include "groupcf/diversity.hpp"
#include "groupcf/errors.hpp"
#include "groupcf/group_lp.hpp"
#include "groupcf/penalized.hpp"
#include "test_support.hpp"

using namespace groupcf;

namespace {

bool disjoint(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  for (auto j : a)
    if (std::find(b.begin(), b.end(), j) != b.end()) return false;
  return true;
}

}  // namespace

TEST_CASE("support") {
  CHECK(support(Vector{0.5, 0.0, 1e-12}, 1e-8) == std::vector<std::size_t>{0});
  CHECK(support(Vector{0.0, 0.0}).empty());
  CHECK(support(Vector{-2.0, 1e-7, 0.0}) == std::vector<std::size_t>{0, 1});
}

TEST_CASE("blacklist") {
  Blacklist f{{1}};
  CHECK(f.to_mask(3) == FeatureMask{true, false, true});
  CHECK_NOTHROW(f.validate(2));
  CHECK_THROWS_AS(f.validate(1), SchemaError);
  for (auto t : {Termination::kCompletedK, Termination::kInfeasible, Termination::kZeroDelta})
    CHECK(termination_from_string(to_string(t)) == t);
  CHECK(to_string(Termination::kInfeasible) == "infeasible");
}

TEST_CASE("k = 1 is a single solve") {
  LinearScorer lin({1.0, 0.5}, 0.0);
  auto set = testing::make_set(Matrix{{-2.0, 0.0}, {-1.0, -1.0}});
  auto solver = make_lp_solver(100.0);
  auto single = solver(set, lin, full_mask(2));
  auto ex = diverse_explanations(set, lin, 1, solver);
  REQUIRE(ex.deltas.size() == 1);
  CHECK(ex.deltas[0].delta == single.delta);
  CHECK(ex.termination == Termination::kCompletedK);
}

TEST_CASE("symmetric weights give one explanation per feature") {
  LinearScorer lin({1.0, 1.0}, 0.0);
  auto set = testing::make_set(Matrix{{-2.0, -2.0}});
  auto ex = diverse_explanations(set, lin, 2, make_lp_solver(1000.0));
  REQUIRE(ex.deltas.size() == 2);
  auto s0 = support(ex.deltas[0].delta), s1 = support(ex.deltas[1].delta);
  CHECK(s0.size() == 1);
  CHECK(s1.size() == 1);
  CHECK(disjoint(s0, s1));
  CHECK(ex.deltas[0].coverage() == 1.0);
  CHECK(ex.deltas[1].coverage() == 1.0);
  CHECK(ex.final_blacklist.features == std::set<std::size_t>{0, 1});
  CHECK(ex.termination == Termination::kCompletedK);
}

TEST_CASE("only one useful feature terminates as infeasible") {
  LinearScorer lin({1.0, 0.0}, 0.0);
  auto set = testing::make_set(Matrix{{-2.0, 0.0}});
  auto ex = diverse_explanations(set, lin, 2, make_lp_solver(1000.0));
  CHECK(ex.deltas.size() == 1);
  CHECK(ex.termination == Termination::kInfeasible);
  CHECK(ex.final_blacklist.features == std::set<std::size_t>{0});
}

TEST_CASE("nothing to change terminates as zero-delta") {
  LinearScorer lin({1.0, 1.0}, 0.0);
  auto set = testing::make_set(Matrix{{-2.0, 1.0}});
  auto flips_already = [&](const InstanceSet&, const Scorer&, const FeatureMask& mask) {
    GroupDelta g;
    g.delta = {0.0, 0.0};
    g.mask = mask;
    g.flipped = {true};
    return g;
  };
  auto z = diverse_explanations(set, lin, 3, flips_already);
  CHECK(z.deltas.empty());
  CHECK(z.termination == Termination::kZeroDelta);
}

TEST_CASE("initial black-list is respected") {
  LinearScorer lin({1.0, 2.0, 0.5}, 0.0);
  auto set = testing::make_set(Matrix{{-1.0, -1.0, -1.0}});
  auto ex = diverse_explanations(set, lin, 3, make_lp_solver(1000.0), kSupportTol, Blacklist{{1}});
  for (const auto& d : ex.deltas) CHECK(d.delta[1] == 0.0);
  CHECK(ex.deltas.size() == 2);
}

TEST_CASE("disjointness, prefix property and black-list growth") {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int t = 0; t < 10; ++t) {
    const std::size_t d = 3 + t % 4, m = 2 + t % 6;
    Vector w(d);
    for (auto& v : w) v = u(gen);
    Matrix X(m, d);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < d; ++j) X(i, j) = u(gen) - 2.0 * w[j];
    LinearScorer lin(w, 0.0);
    auto set = testing::make_set(X);

    for (const MaskedSolver& solver : {make_lp_solver(10.0), make_penalized_solver(PenalizedConfig{})}) {
      const int k = static_cast<int>(d);
      auto full = diverse_explanations(set, lin, k, solver);
      std::size_t last = 0;
      for (std::size_t a = 0; a < full.deltas.size(); ++a) {
        for (std::size_t b = a + 1; b < full.deltas.size(); ++b)
          CHECK(disjoint(support(full.deltas[a].delta), support(full.deltas[b].delta)));
        std::set<std::size_t> used;
        for (std::size_t c = 0; c <= a; ++c)
          for (auto j : support(full.deltas[c].delta)) used.insert(j);
        CHECK(used.size() > last);
        last = used.size();
      }
      for (int kp = 1; kp < k; ++kp) {
        auto prefix = diverse_explanations(set, lin, kp, solver);
        REQUIRE(prefix.deltas.size() <= full.deltas.size());
        for (std::size_t a = 0; a < prefix.deltas.size(); ++a) CHECK(prefix.deltas[a].delta == full.deltas[a].delta);
      }
    }
  }
}
