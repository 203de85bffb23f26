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

#ifndef GROUPCF_DIVERSITY_HPP_
#define GROUPCF_DIVERSITY_HPP_

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "groupcf/group_delta.hpp"
#include "groupcf/models.hpp"

namespace groupcf {

inline constexpr double kSupportTol = 1e-8;

// Features that later explanations may not change.
struct Blacklist {
  std::set<std::size_t> features;

  bool contains(std::size_t j) const { return features.count(j) != 0; }
  FeatureMask to_mask(std::size_t dim) const;
  // Throws SchemaError if any index is >= dim.
  void validate(std::size_t dim) const;
};

enum class Termination {
  kCompletedK,  // k explanations computed
  kInfeasible,  // a solve flipped no instance under the current black-list
  kZeroDelta,   // a solve returned an empty support
};

std::string to_string(Termination t);
Termination termination_from_string(const std::string& s);

struct ExplanationSet {
  std::vector<GroupDelta> deltas;
  Blacklist final_blacklist;
  Termination termination = Termination::kCompletedK;
};

// { j : |delta_j| > tol }, ascending.
std::vector<std::size_t> support(std::span<const double> delta, double tol = kSupportTol);

// Computes up to k explanations with pairwise disjoint supports: each solve
// runs under the black-list of every feature used so far (plus the initial
// black-list). Stops early, without keeping the degenerate delta, when a solve
// flips nobody or changes nothing.
ExplanationSet diverse_explanations(const InstanceSet& set, const Scorer& scorer, int k,
                                    const MaskedSolver& solver, double tol = kSupportTol,
                                    const Blacklist& initial = {});

}  // namespace groupcf

#endif  // GROUPCF_DIVERSITY_HPP_
