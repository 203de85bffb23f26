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

#ifndef GROUPCF_GROUP_DELTA_HPP_
#define GROUPCF_GROUP_DELTA_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "groupcf/matrix.hpp"
#include "groupcf/models.hpp"

namespace groupcf {

// Allowed features: mask[j] == false means feature j is black-listed and its
// change is pinned to zero.
using FeatureMask = std::vector<bool>;

FeatureMask full_mask(std::size_t d);

struct CGridEntry {
  double C = 0.0;
  double coverage = 0.0;
  double objective = 0.0;
  double l1_cost = 0.0;

  friend bool operator==(const CGridEntry&, const CGridEntry&) = default;
};

// One group intervention with its bookkeeping.
struct GroupDelta {
  Vector delta;             // standardized units
  FeatureMask mask;         // mask in force when delta was computed
  double objective = 0.0;   // value of the solver's own objective
  double C = 0.0;
  std::string solver;       // "lp", "proximal-gradient", "coordinate-search"
  std::vector<bool> flipped;
  Vector slacks;            // LP only
  Vector trace;             // objective per iteration (penalized solvers)
  std::vector<CGridEntry> c_grid;  // filled when C was selected from a grid

  std::size_t flip_count() const;
  double coverage() const;
};

// Solves for one delta over an instance set under a mask.
using MaskedSolver =
    std::function<GroupDelta(const InstanceSet&, const Scorer&, const FeatureMask&)>;

// flipped_i = predict(x_i + delta) == target.
std::vector<bool> flip_record(std::span<const double> delta, const InstanceSet& set,
                              const Scorer& scorer, int target = kRetention);

// Runs make_solver(C) for every C in grid and keeps the smallest C whose
// coverage reaches coverage_target. If none does, keeps the highest coverage
// (smallest C on ties). The result records the whole table in c_grid.
MaskedSolver make_c_grid_solver(std::vector<double> grid,
                                std::function<MaskedSolver(double)> make_solver,
                                double coverage_target, std::vector<double> weights = {});

double weighted_l1(std::span<const double> delta, std::span<const double> weights);

}  // namespace groupcf

#endif  // GROUPCF_GROUP_DELTA_HPP_
