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

#ifndef GROUPCF_SIMPLEX_HPP_
#define GROUPCF_SIMPLEX_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "groupcf/matrix.hpp"

namespace groupcf {

enum class RowSense { kLessEqual, kGreaterEqual, kEqual };

struct LpRow {
  Vector coeffs;  // dense, one entry per variable
  RowSense sense = RowSense::kGreaterEqual;
  double rhs = 0.0;
};

// minimize objective . x  subject to rows, x >= 0.
struct LinearProgram {
  Vector objective;
  std::vector<LpRow> rows;

  std::size_t num_variables() const { return objective.size(); }
  std::size_t num_rows() const { return rows.size(); }
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

std::string to_string(LpStatus status);

struct LpResult {
  LpStatus status = LpStatus::kIterationLimit;
  Vector x;
  double objective = 0.0;
  int iterations = 0;
};

struct SimplexOptions {
  double pivot_tol = 1e-11;
  double feasibility_tol = 1e-9;
  // Reduced-cost tolerance, scaled by max(1, max |c_j|).
  double optimality_tol = 1e-11;
  int max_iterations = 200000;
};

// Dense two-phase tableau simplex with Bland's rule (no cycling).
LpResult solve_lp(const LinearProgram& lp, const SimplexOptions& options = {});

}  // namespace groupcf

#endif  // GROUPCF_SIMPLEX_HPP_
