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

#include "groupcf/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "groupcf/errors.hpp"

namespace groupcf {

std::string to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kIterationLimit: return "iteration-limit";
  }
  return "unknown";
}

namespace {

// Tableau rows 0..m-1 hold the constraints, row m the reduced costs. The last
// column is the right-hand side; the objective row's rhs holds -z.
class Tableau {
 public:
  Tableau(std::size_t m, std::size_t n) : m_(m), n_(n), t_(m + 1, n + 1), basis_(m) {}

  double& at(std::size_t r, std::size_t c) { return t_(r, c); }
  double at(std::size_t r, std::size_t c) const { return t_(r, c); }
  double& rhs(std::size_t r) { return t_(r, n_); }
  std::size_t& basis(std::size_t r) { return basis_[r]; }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }

  void pivot(std::size_t r, std::size_t c) {
    const double inv = 1.0 / t_(r, c);
    auto prow = t_.row(r);
    for (auto& v : prow) v *= inv;
    prow[c] = 1.0;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r) continue;
      const double f = t_(i, c);
      if (f == 0.0) continue;
      auto row = t_.row(i);
      for (std::size_t j = 0; j <= n_; ++j) row[j] -= f * prow[j];
      row[c] = 0.0;
    }
    basis_[r] = c;
  }

  // Sets the objective row to cost and prices out the current basis.
  void set_objective(const Vector& cost) {
    auto obj = t_.row(m_);
    std::fill(obj.begin(), obj.end(), 0.0);
    for (std::size_t j = 0; j < n_; ++j) obj[j] = cost[j];
    for (std::size_t r = 0; r < m_; ++r) {
      const double cb = cost[basis_[r]];
      if (cb == 0.0) continue;
      const auto row = t_.row(r);
      for (std::size_t j = 0; j <= n_; ++j) obj[j] -= cb * row[j];
    }
  }

  void drop_row(std::size_t r) {
    // Zero the row so it never wins a ratio test; keep the basis entry.
    auto row = t_.row(r);
    std::fill(row.begin(), row.end(), 0.0);
    dropped_.push_back(r);
  }
  bool is_dropped(std::size_t r) const {
    return std::find(dropped_.begin(), dropped_.end(), r) != dropped_.end();
  }

 private:
  std::size_t m_, n_;
  Matrix t_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> dropped_;
};

enum class PhaseOutcome { kOptimal, kUnbounded, kIterationLimit };

PhaseOutcome run_simplex(Tableau& tab, const std::vector<bool>& allowed, double rc_tol,
                         const SimplexOptions& options, int& iterations) {
  const std::size_t m = tab.rows();
  const std::size_t n = tab.cols();
  for (;;) {
    if (iterations >= options.max_iterations) return PhaseOutcome::kIterationLimit;
    // Bland: lowest-index improving column enters.
    std::size_t enter = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (allowed[j] && tab.at(m, j) < -rc_tol) {
        enter = j;
        break;
      }
    }
    if (enter == n) return PhaseOutcome::kOptimal;

    // Ratio test; ties go to the lowest basic variable index.
    std::size_t leave = m;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < m; ++r) {
      const double a = tab.at(r, enter);
      if (a <= options.pivot_tol) continue;
      const double ratio = std::max(tab.rhs(r), 0.0) / a;
      if (ratio < best_ratio - 1e-15 ||
          (leave != m && std::abs(ratio - best_ratio) <= 1e-15 &&
           tab.basis(r) < tab.basis(leave))) {
        best_ratio = ratio;
        leave = r;
      }
    }
    if (leave == m) return PhaseOutcome::kUnbounded;
    tab.pivot(leave, enter);
    ++iterations;
  }
}

}  // namespace

LpResult solve_lp(const LinearProgram& lp, const SimplexOptions& options) {
  const std::size_t n = lp.num_variables();
  const std::size_t m = lp.num_rows();
  for (const auto& row : lp.rows) {
    if (row.coeffs.size() != n) throw SolverError("solve_lp: row width does not match variable count");
  }

  // Column layout: structural | slack/surplus (one per inequality) | artificial.
  std::vector<double> sign(m, 1.0);
  std::vector<RowSense> sense(m);
  std::size_t n_slack = 0, n_art = 0;
  for (std::size_t r = 0; r < m; ++r) {
    sense[r] = lp.rows[r].sense;
    if (lp.rows[r].rhs < 0.0) {
      sign[r] = -1.0;
      if (sense[r] == RowSense::kLessEqual) sense[r] = RowSense::kGreaterEqual;
      else if (sense[r] == RowSense::kGreaterEqual) sense[r] = RowSense::kLessEqual;
    }
    if (sense[r] != RowSense::kEqual) ++n_slack;
    if (sense[r] != RowSense::kLessEqual) ++n_art;
  }
  const std::size_t total = n + n_slack + n_art;
  Tableau tab(m, total);
  std::size_t slack_col = n, art_col = n + n_slack;
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t j = 0; j < n; ++j) tab.at(r, j) = sign[r] * lp.rows[r].coeffs[j];
    tab.rhs(r) = sign[r] * lp.rows[r].rhs;
    if (sense[r] == RowSense::kLessEqual) {
      tab.at(r, slack_col) = 1.0;
      tab.basis(r) = slack_col++;
    } else {
      if (sense[r] == RowSense::kGreaterEqual) tab.at(r, slack_col++) = -1.0;
      tab.at(r, art_col) = 1.0;
      tab.basis(r) = art_col++;
    }
  }

  LpResult result;
  double cmax = 1.0;
  for (double c : lp.objective) cmax = std::max(cmax, std::abs(c));

  if (n_art > 0) {
    Vector phase1(total, 0.0);
    for (std::size_t j = n + n_slack; j < total; ++j) phase1[j] = 1.0;
    tab.set_objective(phase1);
    std::vector<bool> allowed(total, true);
    const auto outcome = run_simplex(tab, allowed, options.optimality_tol, options, result.iterations);
    if (outcome == PhaseOutcome::kIterationLimit) {
      result.status = LpStatus::kIterationLimit;
      return result;
    }
    if (-tab.rhs(m) > options.feasibility_tol * std::max(1.0, static_cast<double>(m))) {
      result.status = LpStatus::kInfeasible;
      return result;
    }
    // Drive remaining (zero-valued) artificials out of the basis.
    for (std::size_t r = 0; r < m; ++r) {
      if (tab.basis(r) < n + n_slack) continue;
      std::size_t col = n + n_slack;
      for (std::size_t j = 0; j < n + n_slack; ++j) {
        if (std::abs(tab.at(r, j)) > options.pivot_tol) {
          col = j;
          break;
        }
      }
      if (col < n + n_slack) {
        tab.pivot(r, col);
      } else {
        tab.drop_row(r);  // redundant constraint
      }
    }
  }

  Vector cost(total, 0.0);
  std::copy(lp.objective.begin(), lp.objective.end(), cost.begin());
  tab.set_objective(cost);
  std::vector<bool> allowed(total, true);
  for (std::size_t j = n + n_slack; j < total; ++j) allowed[j] = false;
  const auto outcome =
      run_simplex(tab, allowed, options.optimality_tol * cmax, options, result.iterations);
  if (outcome == PhaseOutcome::kUnbounded) {
    result.status = LpStatus::kUnbounded;
    return result;
  }
  if (outcome == PhaseOutcome::kIterationLimit) {
    result.status = LpStatus::kIterationLimit;
    return result;
  }

  result.status = LpStatus::kOptimal;
  result.x.assign(n, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    if (tab.is_dropped(r)) continue;
    const std::size_t b = tab.basis(r);
    if (b < n) result.x[b] = std::max(tab.rhs(r), 0.0);
  }
  result.objective = dot(lp.objective, result.x);
  return result;
}

}  // namespace groupcf
