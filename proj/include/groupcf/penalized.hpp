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

#ifndef GROUPCF_PENALIZED_HPP_
#define GROUPCF_PENALIZED_HPP_

#include <span>
#include <string>

#include "groupcf/group_delta.hpp"
#include "groupcf/group_lp.hpp"
#include "groupcf/models.hpp"

namespace groupcf {

enum class LossKind {
  kSquaredHinge,  // max(0, margin - y_cf * score)^2
  kCrossEntropy,  // -log p(y_cf)
};

std::string to_string(LossKind kind);
LossKind loss_kind_from_string(const std::string& name);

// Candidate per-feature moves, standardized units.
const Vector& DefaultCoordGrid();

struct PenalizedConfig {
  double C = 1.0;
  LossKind loss = LossKind::kSquaredHinge;
  Vector weights;   // empty means all ones
  FeatureMask mask; // empty means every feature allowed
  double margin = kDefaultMargin;
  int max_iter = 50000;
  double step_size = 1.0;  // initial and largest proximal step
  Vector coord_grid = DefaultCoordGrid();
  int y_cf = kRetention;

  void validate(std::size_t dim) const;
};

// sum_j weights_j |(M delta)_j| + C sum_i loss(score(x_i + M delta)), where M
// zeroes the masked coordinates.
double penalized_objective(std::span<const double> delta, const InstanceSet& set,
                           const Scorer& scorer, const PenalizedConfig& cfg);

// Minimizes penalized_objective from delta = 0. Scorers with an analytic
// gradient use accelerated proximal gradient (soft-thresholding, backtracking
// step); others use cyclic coordinate search over cfg.coord_grid. Both are
// monotone: GroupDelta::trace is non-increasing. The cross-entropy gradient
// assumes p = sigmoid(score), which holds for LinearScorer.
GroupDelta solve_penalized(const InstanceSet& set, const Scorer& scorer,
                           const PenalizedConfig& cfg);

// MaskedSolver adapter; the mask passed at call time replaces cfg.mask.
MaskedSolver make_penalized_solver(PenalizedConfig cfg);

}  // namespace groupcf

#endif  // GROUPCF_PENALIZED_HPP_
