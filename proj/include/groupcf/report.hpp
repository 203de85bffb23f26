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

#ifndef GROUPCF_REPORT_HPP_
#define GROUPCF_REPORT_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "groupcf/dataset.hpp"
#include "groupcf/diversity.hpp"
#include "groupcf/group_delta.hpp"
#include "groupcf/models.hpp"

namespace groupcf {

// Fraction of the set predicted as target after shifting by delta. Throws
// SchemaError on an empty set.
double coverage(std::span<const double> delta, const InstanceSet& set, const Scorer& scorer,
                int target = kRetention);

// Reference statistics of the explained group, original units.
struct GroupBaseline {
  Vector means;
};

GroupBaseline compute_baseline(const InstanceSet& set, const Scaler& scaler);

struct Clause {
  std::string feature;
  std::string text;

  friend bool operator==(const Clause&, const Clause&) = default;
};

struct DeltaRecord {
  Vector delta_std;
  Vector delta_original;
  double coverage = 0.0;
  std::size_t flip_count = 0;
  std::size_t sparsity = 0;
  double l1_cost = 0.0;  // weighted L1 of delta_std
  double objective = 0.0;
  double C = 0.0;
  std::string solver;
  std::vector<std::string> blacklisted;  // features masked for this solve
  std::vector<CGridEntry> c_grid;
  std::vector<Clause> clauses;
  std::string narrative;

  friend bool operator==(const DeltaRecord&, const DeltaRecord&) = default;
};

struct RunMetadata {
  std::uint64_t seed = 0;
  std::string classifier;
  std::string department;
  std::vector<std::string> features;
  std::vector<double> C_grid;
  int k = 1;
  double margin = 0.0;
  double coverage_target = 0.0;
  std::vector<double> weights;
  std::vector<std::string> blacklist;
  std::string explain_split;
  double split_ratio = 0.0;

  friend bool operator==(const RunMetadata&, const RunMetadata&) = default;
};

struct ExplanationReport {
  RunMetadata meta;
  std::size_t instance_count = 0;
  std::vector<std::size_t> instance_row_ids;
  Vector baseline_means;
  std::vector<DeltaRecord> deltas;
  std::string termination;
  std::vector<std::string> final_blacklist;

  friend bool operator==(const ExplanationReport&, const ExplanationReport&) = default;
};

// "approx." magnitude: two significant digits, no exponent, no trailing zeros.
std::string format_approx(double value);

// One clause per supported feature, ordered by |delta_std| descending.
std::vector<Clause> describe_delta(std::span<const double> delta_std, const Scaler& scaler,
                                   const FeatureSchema& schema, const GroupBaseline& baseline,
                                   double tol = kSupportTol);

// Converts each delta to original units and phrases it. weights (empty = all
// ones) define l1_cost. Metadata is left for the caller to fill in.
ExplanationReport render_report(const ExplanationSet& explanations, const Scaler& scaler,
                                const FeatureSchema& schema, const GroupBaseline& baseline,
                                std::size_t instance_count, std::span<const double> weights = {},
                                double tol = kSupportTol);

std::string render_text(const ExplanationReport& report);

}  // namespace groupcf

#endif  // GROUPCF_REPORT_HPP_
