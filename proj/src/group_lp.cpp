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

#include "groupcf/group_lp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "groupcf/errors.hpp"

namespace groupcf {

void GroupLpProblem::validate() const {
  const std::size_t d = dim();
  if (d == 0) throw SchemaError("group LP: no features");
  if (X.rows() > 0 && X.cols() != d) throw SchemaError("group LP: instance width differs from w");
  if (y_cf != kRetention && y_cf != kAttrition) throw SchemaError("group LP: target must be +1 or -1");
  if (!(C >= 0.0) || !std::isfinite(C)) throw SchemaError("group LP: C must be finite and >= 0");
  if (!(margin >= 0.0)) throw SchemaError("group LP: margin must be >= 0");
  if (!weights.empty()) {
    if (weights.size() != d) throw SchemaError("group LP: weights length differs from w");
    for (double v : weights) {
      if (!(v > 0.0)) throw SchemaError("group LP: weights must be positive");
    }
  }
  if (!mask.empty() && mask.size() != d) throw SchemaError("group LP: mask length differs from w");
}

GroupLp build_group_lp(const GroupLpProblem& problem) {
  problem.validate();
  const std::size_t d = problem.dim();
  const std::size_t m = problem.num_instances();
  GroupLp out;
  out.num_instances = m;
  for (std::size_t j = 0; j < d; ++j) {
    if (problem.mask.empty() || problem.mask[j]) out.free_features.push_back(j);
  }
  const std::size_t k = out.free_features.size();
  const std::size_t n = 2 * k + m;

  out.lp.objective.assign(n, 0.0);
  for (std::size_t f = 0; f < k; ++f) {
    const std::size_t j = out.free_features[f];
    const double cost = problem.weights.empty() ? 1.0 : problem.weights[j];
    out.lp.objective[out.plus_var(f)] = cost;
    out.lp.objective[out.minus_var(f)] = cost;
  }
  for (std::size_t i = 0; i < m; ++i) out.lp.objective[out.slack_var(i)] = problem.C;

  // y (w.(d+ - d-)) + xi_i >= margin - y (w.x_i + b)
  const double y = problem.y_cf;
  for (std::size_t i = 0; i < m; ++i) {
    LpRow row;
    row.coeffs.assign(n, 0.0);
    for (std::size_t f = 0; f < k; ++f) {
      const double a = y * problem.w[out.free_features[f]];
      row.coeffs[out.plus_var(f)] = a;
      row.coeffs[out.minus_var(f)] = -a;
    }
    row.coeffs[out.slack_var(i)] = 1.0;
    row.sense = RowSense::kGreaterEqual;
    row.rhs = problem.margin - y * (dot(problem.w, problem.X.row(i)) + problem.b);
    out.lp.rows.push_back(std::move(row));
  }
  return out;
}

GroupLpSolution solve_group_lp(const GroupLpProblem& problem, const SimplexOptions& options) {
  const GroupLp glp = build_group_lp(problem);
  const LpResult res = solve_lp(glp.lp, options);
  if (res.status != LpStatus::kOptimal) {
    std::ostringstream msg;
    msg << "group LP solve failed (" << to_string(res.status) << ") with d=" << problem.dim()
        << ", m=" << problem.num_instances() << ", free features=" << glp.free_features.size()
        << ", C=" << problem.C << " after " << res.iterations << " pivots";
    throw SolverError(msg.str());
  }

  GroupLpSolution sol;
  sol.delta.assign(problem.dim(), 0.0);
  for (std::size_t f = 0; f < glp.free_features.size(); ++f) {
    sol.delta[glp.free_features[f]] = res.x[glp.plus_var(f)] - res.x[glp.minus_var(f)];
  }
  // At an optimum with C > 0 each slack equals its constraint deficit; the
  // recomputation keeps the reported slacks exactly consistent with delta.
  const double y = problem.y_cf;
  const double shift = y * dot(problem.w, sol.delta);
  sol.slacks.resize(problem.num_instances());
  sol.flipped.resize(problem.num_instances());
  for (std::size_t i = 0; i < problem.num_instances(); ++i) {
    const double base = dot(problem.w, problem.X.row(i)) + problem.b;
    sol.slacks[i] = std::max(0.0, problem.margin - y * base - shift);
    const double s = base + dot(problem.w, sol.delta);
    sol.flipped[i] = (s >= 0.0 ? kRetention : kAttrition) == problem.y_cf;
  }
  double slack_sum = 0.0;
  for (double s : sol.slacks) slack_sum += s;
  sol.objective = weighted_l1(sol.delta, problem.weights) + problem.C * slack_sum;
  return sol;
}

MaskedSolver make_lp_solver(double C, double margin, Vector weights) {
  return [C, margin, weights = std::move(weights)](const InstanceSet& set, const Scorer& scorer,
                                                   const FeatureMask& mask) {
    const auto* linear = dynamic_cast<const LinearScorer*>(&scorer);
    if (linear == nullptr) throw SchemaError("LP solver requires a linear scorer");
    GroupLpProblem problem;
    problem.w = linear->weights();
    problem.b = linear->bias();
    problem.X = set.X;
    problem.C = C;
    problem.weights = weights;
    problem.mask = mask;
    problem.margin = margin;
    const auto sol = solve_group_lp(problem);
    GroupDelta out;
    out.delta = sol.delta;
    out.mask = mask.empty() ? full_mask(problem.dim()) : mask;
    out.objective = sol.objective;
    out.C = C;
    out.solver = "lp";
    out.flipped = flip_record(sol.delta, set, scorer, problem.y_cf);
    out.slacks = sol.slacks;
    return out;
  };
}

}  // namespace groupcf
