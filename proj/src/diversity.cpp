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

#include "groupcf/diversity.hpp"

#include <cmath>

#include "groupcf/errors.hpp"

namespace groupcf {

FeatureMask Blacklist::to_mask(std::size_t dim) const {
  validate(dim);
  FeatureMask mask(dim, true);
  for (auto j : features) mask[j] = false;
  return mask;
}

void Blacklist::validate(std::size_t dim) const {
  for (auto j : features) {
    if (j >= dim) throw SchemaError("black-list index " + std::to_string(j) + " out of range");
  }
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::kCompletedK: return "completed-k";
    case Termination::kInfeasible: return "infeasible";
    case Termination::kZeroDelta: return "zero-delta";
  }
  return "unknown";
}

Termination termination_from_string(const std::string& s) {
  if (s == "completed-k") return Termination::kCompletedK;
  if (s == "infeasible") return Termination::kInfeasible;
  if (s == "zero-delta") return Termination::kZeroDelta;
  throw SchemaError("unknown termination \"" + s + "\"");
}

std::vector<std::size_t> support(std::span<const double> delta, double tol) {
  if (!(tol > 0.0)) throw SchemaError("support: tolerance must be > 0");
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < delta.size(); ++j) {
    if (std::abs(delta[j]) > tol) out.push_back(j);
  }
  return out;
}

ExplanationSet diverse_explanations(const InstanceSet& set, const Scorer& scorer, int k,
                                    const MaskedSolver& solver, double tol,
                                    const Blacklist& initial) {
  if (k < 1) throw SchemaError("diverse_explanations: k must be >= 1");
  const std::size_t d = set.dim();
  initial.validate(d);
  ExplanationSet out;
  out.final_blacklist = initial;
  for (int i = 0; i < k; ++i) {
    GroupDelta next = solver(set, scorer, out.final_blacklist.to_mask(d));
    const auto used = support(next.delta, tol);
    if (next.flip_count() == 0) {
      out.termination = Termination::kInfeasible;
      return out;
    }
    if (used.empty()) {
      out.termination = Termination::kZeroDelta;
      return out;
    }
    out.final_blacklist.features.insert(used.begin(), used.end());
    out.deltas.push_back(std::move(next));
  }
  out.termination = Termination::kCompletedK;
  return out;
}

}  // namespace groupcf
