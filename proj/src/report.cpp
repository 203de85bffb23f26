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

#include "groupcf/report.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "groupcf/errors.hpp"

namespace groupcf {

double coverage(std::span<const double> delta, const InstanceSet& set, const Scorer& scorer,
                int target) {
  if (set.size() == 0) throw SchemaError("coverage: empty instance set, nothing to measure");
  const auto flips = flip_record(delta, set, scorer, target);
  const auto hits = std::count(flips.begin(), flips.end(), true);
  return static_cast<double>(hits) / static_cast<double>(set.size());
}

GroupBaseline compute_baseline(const InstanceSet& set, const Scaler& scaler) {
  GroupBaseline out;
  out.means.assign(set.dim(), 0.0);
  if (set.size() == 0) return out;
  for (std::size_t i = 0; i < set.size(); ++i) {
    const Vector orig = scaler.destandardize(set.X.row(i));
    for (std::size_t j = 0; j < orig.size(); ++j) out.means[j] += orig[j];
  }
  for (auto& m : out.means) m /= static_cast<double>(set.size());
  return out;
}

std::string format_approx(double value) {
  if (value == 0.0 || !std::isfinite(value)) return "0";
  const double mag = std::floor(std::log10(std::abs(value)));
  const double scale = std::pow(10.0, mag - 1.0);
  const double rounded = std::round(value / scale) * scale;
  const int decimals = std::max(0, static_cast<int>(1.0 - mag));
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, rounded);
  std::string s(buf);
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

namespace {

// "PercentSalaryHike" -> "Percent Salary Hike"
std::string split_camel(const std::string& name) {
  std::string out;
  for (std::size_t i = 0; i < name.size(); ++i) {
    const unsigned char c = static_cast<unsigned char>(name[i]);
    if (i > 0 && std::isupper(c) && !std::isupper(static_cast<unsigned char>(name[i - 1]))) {
      out.push_back(' ');
    }
    out.push_back(name[i] == '_' ? ' ' : name[i]);
  }
  return out;
}

// Tenure counters read better in years than as percentages.
const std::map<std::string, std::string>& year_phrases() {
  static const std::map<std::string, std::string> kPhrases = {
      {"YearsSinceLastPromotion", "since their last promotion"},
      {"YearsInCurrentRole", "in their current role"},
      {"YearsWithCurrManager", "with their current manager"},
      {"YearsAtCompany", "at the company"},
      {"TotalWorkingYears", "of total working experience"},
  };
  return kPhrases;
}

std::string signed_approx(double v) { return (v > 0 ? "+" : "-") + format_approx(std::abs(v)); }

std::string phrase(const std::string& feature, double change, double group_mean) {
  const auto& years = year_phrases();
  if (auto it = years.find(feature); it != years.end()) {
    return "approx. " + format_approx(std::abs(change)) + " years " + (change < 0 ? "less " : "more ") +
           it->second;
  }
  const std::string direction = change > 0 ? "an increase in " : "a decrease in ";
  std::string text = direction + split_camel(feature) + " of approx. ";
  if (group_mean > 0.0) {
    text += format_approx(100.0 * std::abs(change) / group_mean) + "% (" + signed_approx(change) +
            " from a group mean of " + format_approx(group_mean) + ")";
  } else {
    text += format_approx(std::abs(change)) + " (" + signed_approx(change) + ")";
  }
  return text;
}

std::string percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f%%", 100.0 * fraction);
  return buf;
}

}  // namespace

std::vector<Clause> describe_delta(std::span<const double> delta_std, const Scaler& scaler,
                                   const FeatureSchema& schema, const GroupBaseline& baseline,
                                   double tol) {
  const Vector original = scaler.destandardize_delta(delta_std);
  auto used = support(delta_std, tol);
  std::stable_sort(used.begin(), used.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(delta_std[a]) > std::abs(delta_std[b]);
  });
  std::vector<Clause> out;
  for (auto j : used) {
    const double mean = j < baseline.means.size() ? baseline.means[j] : 0.0;
    out.push_back({schema.names[j], phrase(schema.names[j], original[j], mean)});
  }
  return out;
}

ExplanationReport render_report(const ExplanationSet& explanations, const Scaler& scaler,
                                const FeatureSchema& schema, const GroupBaseline& baseline,
                                std::size_t instance_count, std::span<const double> weights,
                                double tol) {
  if (scaler.size() != schema.size()) throw SchemaError("render_report: scaler/schema mismatch");
  ExplanationReport report;
  report.instance_count = instance_count;
  report.baseline_means = baseline.means;
  report.termination = to_string(explanations.termination);
  for (auto j : explanations.final_blacklist.features) report.final_blacklist.push_back(schema.names.at(j));

  for (const auto& gd : explanations.deltas) {
    DeltaRecord rec;
    rec.delta_std = gd.delta;
    rec.delta_original = scaler.destandardize_delta(gd.delta);
    rec.flip_count = gd.flip_count();
    rec.coverage = gd.coverage();
    rec.sparsity = support(gd.delta, tol).size();
    rec.l1_cost = weighted_l1(gd.delta, weights);
    rec.objective = gd.objective;
    rec.C = gd.C;
    rec.solver = gd.solver;
    for (std::size_t j = 0; j < gd.mask.size(); ++j) {
      if (!gd.mask[j]) rec.blacklisted.push_back(schema.names[j]);
    }
    rec.c_grid = gd.c_grid;
    rec.clauses = describe_delta(gd.delta, scaler, schema, baseline, tol);
    const std::string cov = " (coverage " + percent(rec.coverage) + " of " +
                            std::to_string(instance_count) + " employees)";
    if (rec.clauses.empty()) {
      rec.narrative = "no change required" + cov;
    } else {
      std::string joined;
      for (std::size_t c = 0; c < rec.clauses.size(); ++c) {
        if (c > 0) joined += " AND ";
        joined += rec.clauses[c].text;
      }
      rec.narrative = "If employees would have had " + joined + ", attrition would be unlikely" + cov + ".";
    }
    report.deltas.push_back(std::move(rec));
  }
  return report;
}

std::string render_text(const ExplanationReport& report) {
  std::ostringstream out;
  const auto& m = report.meta;
  out << "Group counterfactual explanations\n";
  out << "classifier: " << m.classifier << "\n";
  out << "department: " << (m.department.empty() ? "(all)" : m.department) << "\n";
  out << "explained employees (predicted attrition): " << report.instance_count << "\n";
  out << "seed: " << m.seed << ", k: " << m.k << ", margin: " << m.margin << "\n";
  out << "termination: " << report.termination << "\n\n";
  const auto name = [&](std::size_t j) {
    return j < m.features.size() ? m.features[j] : "feature " + std::to_string(j);
  };
  for (std::size_t i = 0; i < report.deltas.size(); ++i) {
    const auto& d = report.deltas[i];
    out << i + 1 << ". " << d.narrative << "\n";
    out << "   C=" << d.C << ", coverage=" << percent(d.coverage) << ", sparsity=" << d.sparsity
        << ", L1 cost (standardized)=" << d.l1_cost << "\n";
    for (std::size_t j = 0; j < d.delta_std.size(); ++j) {
      if (std::abs(d.delta_std[j]) <= kSupportTol) continue;
      out << "   " << name(j) << ": " << d.delta_original[j] << " original units ("
          << d.delta_std[j] << " std)\n";
    }
    if (!d.c_grid.empty()) {
      out << "   C grid:";
      for (const auto& e : d.c_grid) out << " [C=" << e.C << " coverage=" << percent(e.coverage) << "]";
      out << "\n";
    }
  }
  if (report.deltas.empty()) out << "No explanation could be computed.\n";
  return out.str();
}

}  // namespace groupcf
