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

#include "groupcf/group_delta.hpp"

#include <algorithm>
#include <cmath>

#include "groupcf/errors.hpp"

namespace groupcf {

FeatureMask full_mask(std::size_t d) { return FeatureMask(d, true); }

std::size_t GroupDelta::flip_count() const {
  return static_cast<std::size_t>(std::count(flipped.begin(), flipped.end(), true));
}

double GroupDelta::coverage() const {
  if (flipped.empty()) return 0.0;
  return static_cast<double>(flip_count()) / static_cast<double>(flipped.size());
}

std::vector<bool> flip_record(std::span<const double> delta, const InstanceSet& set,
                              const Scorer& scorer, int target) {
  if (delta.size() != set.dim()) throw SchemaError("flip_record: dimension mismatch");
  std::vector<bool> out(set.size());
  Vector shifted(set.dim());
  for (std::size_t i = 0; i < set.size(); ++i) {
    const auto x = set.X.row(i);
    for (std::size_t j = 0; j < shifted.size(); ++j) shifted[j] = x[j] + delta[j];
    out[i] = scorer.predict(shifted) == target;
  }
  return out;
}

MaskedSolver make_c_grid_solver(std::vector<double> grid,
                                std::function<MaskedSolver(double)> make_solver,
                                double coverage_target, std::vector<double> weights) {
  if (grid.empty()) throw SchemaError("C grid is empty");
  std::vector<MaskedSolver> solvers;
  for (double C : grid) solvers.push_back(make_solver(C));
  return [grid = std::move(grid), solvers = std::move(solvers), coverage_target,
          weights = std::move(weights)](const InstanceSet& set, const Scorer& scorer,
                                        const FeatureMask& mask) {
    std::vector<GroupDelta> results;
    std::vector<CGridEntry> table;
    for (std::size_t c = 0; c < grid.size(); ++c) {
      results.push_back(solvers[c](set, scorer, mask));
      const auto& r = results.back();
      table.push_back({grid[c], r.coverage(), r.objective, weighted_l1(r.delta, weights)});
    }
    std::size_t chosen = grid.size();
    for (std::size_t c = 0; c < grid.size(); ++c) {
      if (table[c].coverage >= coverage_target &&
          (chosen == grid.size() || grid[c] < grid[chosen])) {
        chosen = c;
      }
    }
    if (chosen == grid.size()) {
      chosen = 0;
      for (std::size_t c = 1; c < grid.size(); ++c) {
        if (table[c].coverage > table[chosen].coverage ||
            (table[c].coverage == table[chosen].coverage && grid[c] < grid[chosen])) {
          chosen = c;
        }
      }
    }
    GroupDelta out = std::move(results[chosen]);
    out.c_grid = std::move(table);
    return out;
  };
}

double weighted_l1(std::span<const double> delta, std::span<const double> weights) {
  double s = 0.0;
  for (std::size_t j = 0; j < delta.size(); ++j) {
    s += (weights.empty() ? 1.0 : weights[j]) * std::abs(delta[j]);
  }
  return s;
}

}  // namespace groupcf
