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

#ifndef GROUPCF_GROUP_LP_HPP_
#define GROUPCF_GROUP_LP_HPP_

#include <cstddef>
#include <vector>

#include "groupcf/group_delta.hpp"
#include "groupcf/matrix.hpp"
#include "groupcf/simplex.hpp"

namespace groupcf {

inline constexpr double kDefaultMargin = 1e-4;

// Group counterfactual for a linear classifier sign(w.x + b):
//
//   min  sum_j weights_j |delta_j| + C sum_i xi_i
//   s.t. y_cf (w.delta + w.x_i + b) >= margin - xi_i,  xi_i >= 0
//
// with delta_j fixed at zero for masked-out features.
struct GroupLpProblem {
  Vector w;
  double b = 0.0;
  Matrix X;
  int y_cf = kRetention;
  double C = 1.0;
  Vector weights;     // empty means all ones
  FeatureMask mask;   // empty means every feature allowed
  double margin = kDefaultMargin;

  std::size_t dim() const { return w.size(); }
  std::size_t num_instances() const { return X.rows(); }
  // Throws SchemaError on inconsistent dimensions or invalid parameters.
  void validate() const;
};

// Variables are laid out as delta+ (one per allowed feature), delta- (same
// order) and then one slack per instance.
struct GroupLp {
  LinearProgram lp;
  std::vector<std::size_t> free_features;
  std::size_t num_instances = 0;

  std::size_t plus_var(std::size_t k) const { return k; }
  std::size_t minus_var(std::size_t k) const { return free_features.size() + k; }
  std::size_t slack_var(std::size_t i) const { return 2 * free_features.size() + i; }
};

GroupLp build_group_lp(const GroupLpProblem& problem);

struct GroupLpSolution {
  Vector delta;
  Vector slacks;
  double objective = 0.0;
  std::vector<bool> flipped;
};

// Throws SolverError (with the problem size) if the simplex fails.
GroupLpSolution solve_group_lp(const GroupLpProblem& problem,
                               const SimplexOptions& options = {});

// MaskedSolver adapter for a linear scorer at a fixed C. The scorer passed at
// call time must be a LinearScorer.
MaskedSolver make_lp_solver(double C, double margin = kDefaultMargin, Vector weights = {});

}  // namespace groupcf

#endif  // GROUPCF_GROUP_LP_HPP_
