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

#include "groupcf/penalized.hpp"

#include <algorithm>
#include <cmath>

#include "groupcf/errors.hpp"

namespace groupcf {

std::string to_string(LossKind kind) {
  return kind == LossKind::kSquaredHinge ? "squared-hinge" : "cross-entropy";
}

LossKind loss_kind_from_string(const std::string& name) {
  if (name == "squared-hinge") return LossKind::kSquaredHinge;
  if (name == "cross-entropy") return LossKind::kCrossEntropy;
  throw SchemaError("unknown loss \"" + name + "\"");
}

const Vector& DefaultCoordGrid() {
  static const Vector kGrid = {0.0, -0.25, 0.25, -0.5, 0.5, -1.0, 1.0, -2.0, 2.0, -4.0, 4.0};
  return kGrid;
}

void PenalizedConfig::validate(std::size_t dim) const {
  if (!(C > 0.0) || !std::isfinite(C)) throw SchemaError("penalized: C must be > 0");
  if (!(margin >= 0.0)) throw SchemaError("penalized: margin must be >= 0");
  if (!(step_size > 0.0)) throw SchemaError("penalized: step size must be > 0");
  if (max_iter < 1) throw SchemaError("penalized: max_iter must be >= 1");
  if (coord_grid.empty() || std::find(coord_grid.begin(), coord_grid.end(), 0.0) == coord_grid.end()) {
    throw SchemaError("penalized: coordinate grid must be non-empty and contain 0");
  }
  if (!weights.empty() && weights.size() != dim) throw SchemaError("penalized: weights length");
  for (double w : weights) {
    if (!(w > 0.0)) throw SchemaError("penalized: weights must be positive");
  }
  if (!mask.empty() && mask.size() != dim) throw SchemaError("penalized: mask length");
}

namespace {

class Objective {
 public:
  Objective(const InstanceSet& set, const Scorer& scorer, const PenalizedConfig& cfg)
      : set_(set), scorer_(scorer), cfg_(cfg), shifted_(set.dim()) {
    if (set.dim() != scorer.dim()) throw SchemaError("penalized: instance/scorer dimension mismatch");
    cfg.validate(set.dim());
  }

  bool allowed(std::size_t j) const { return cfg_.mask.empty() || cfg_.mask[j]; }
  double weight(std::size_t j) const { return cfg_.weights.empty() ? 1.0 : cfg_.weights[j]; }

  Vector project(std::span<const double> delta) const {
    Vector out(delta.begin(), delta.end());
    for (std::size_t j = 0; j < out.size(); ++j) {
      if (!allowed(j)) out[j] = 0.0;
    }
    return out;
  }

  double l1(std::span<const double> projected) const {
    double s = 0.0;
    for (std::size_t j = 0; j < projected.size(); ++j) s += weight(j) * std::abs(projected[j]);
    return s;
  }

  double loss_of(std::span<const double> x) const {
    const double y = cfg_.y_cf;
    if (cfg_.loss == LossKind::kSquaredHinge) {
      const double v = std::max(0.0, cfg_.margin - y * scorer_.score(x));
      return v * v;
    }
    const double p = scorer_.retention_probability(x);
    const double p_target = y > 0 ? p : 1.0 - p;
    return -std::log(std::max(p_target, 1e-12));
  }

  // C * sum_i loss(x_i + delta); delta must already be projected.
  double smooth(std::span<const double> delta) {
    double s = 0.0;
    for (std::size_t i = 0; i < set_.size(); ++i) s += loss_of(shift(i, delta));
    return cfg_.C * s;
  }

  Vector smooth_gradient(std::span<const double> delta) {
    const double y = cfg_.y_cf;
    Vector grad(delta.size(), 0.0);
    for (std::size_t i = 0; i < set_.size(); ++i) {
      const auto x = shift(i, delta);
      const double s = scorer_.score(x);
      double dl = 0.0;
      if (cfg_.loss == LossKind::kSquaredHinge) {
        dl = -2.0 * y * std::max(0.0, cfg_.margin - y * s);
      } else {
        dl = -y * sigmoid(-y * s);
      }
      if (dl == 0.0) continue;
      const Vector g = scorer_.score_gradient(x);
      for (std::size_t j = 0; j < grad.size(); ++j) grad[j] += dl * g[j];
    }
    for (std::size_t j = 0; j < grad.size(); ++j) grad[j] = allowed(j) ? cfg_.C * grad[j] : 0.0;
    return grad;
  }

  double total(std::span<const double> delta) {
    const Vector p = project(delta);
    return l1(p) + smooth(p);
  }

 private:
  std::span<const double> shift(std::size_t i, std::span<const double> delta) {
    const auto x = set_.X.row(i);
    for (std::size_t j = 0; j < shifted_.size(); ++j) shifted_[j] = x[j] + delta[j];
    return shifted_;
  }

  const InstanceSet& set_;
  const Scorer& scorer_;
  const PenalizedConfig& cfg_;
  Vector shifted_;
};

double soft_threshold(double v, double t) {
  if (v > t) return v - t;
  if (v < -t) return v + t;
  return 0.0;
}

// Monotone accelerated proximal gradient. The momentum is dropped whenever the
// extrapolated step fails to improve, so every recorded iterate is a descent.
GroupDelta proximal_gradient(Objective& obj, std::size_t d, const PenalizedConfig& cfg) {
  GroupDelta out;
  out.solver = "proximal-gradient";
  Vector x(d, 0.0), x_prev(d, 0.0), y(d, 0.0), z(d);
  double total = obj.smooth(x) + obj.l1(x);
  out.trace.push_back(total);
  double step = cfg.step_size;
  double t = 1.0;
  bool restarted = true;
  for (int it = 0; it < cfg.max_iter; ++it) {
    const double fy = obj.smooth(y);
    const Vector grad = obj.smooth_gradient(y);
    bool accepted = false;
    double fz = fy;
    for (int shrink = 0; shrink < 80; ++shrink) {
      double lin = 0.0, sq = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        z[j] = obj.allowed(j) ? soft_threshold(y[j] - step * grad[j], step * obj.weight(j)) : 0.0;
        const double diff = z[j] - y[j];
        lin += grad[j] * diff;
        sq += diff * diff;
      }
      fz = obj.smooth(z);
      if (fz <= fy + lin + sq / (2.0 * step) + 1e-12 * std::abs(fy)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    const double total_z = fz + obj.l1(z);
    if (total_z >= total) {
      // Plain step from the current iterate made no progress: converged.
      if (restarted) break;
      y = x;
      t = 1.0;
      restarted = true;
      continue;
    }
    const double change = total - total_z;
    x_prev.swap(x);
    x = z;
    total = total_z;
    out.trace.push_back(total);
    if (change < 1e-9) break;
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    const double beta = (t - 1.0) / t_next;
    for (std::size_t j = 0; j < d; ++j) y[j] = obj.allowed(j) ? x[j] + beta * (x[j] - x_prev[j]) : 0.0;
    t = t_next;
    restarted = false;
  }
  out.delta = std::move(x);
  out.objective = total;
  return out;
}

GroupDelta coordinate_search(Objective& obj, std::size_t d, const PenalizedConfig& cfg) {
  GroupDelta out;
  out.solver = "coordinate-search";
  Vector delta(d, 0.0);
  double best = obj.total(delta);
  out.trace.push_back(best);
  for (int cycle = 0; cycle < cfg.max_iter; ++cycle) {
    bool improved = false;
    for (std::size_t j = 0; j < d; ++j) {
      if (!obj.allowed(j)) continue;
      const double base = delta[j];
      double best_value = base;
      for (double offset : cfg.coord_grid) {
        if (offset == 0.0) continue;
        delta[j] = base + offset;
        const double candidate = obj.total(delta);
        if (candidate < best - 1e-12) {
          best = candidate;
          best_value = delta[j];
        }
      }
      delta[j] = best_value;
      if (best_value != base) {
        improved = true;
        out.trace.push_back(best);
      }
    }
    if (!improved) break;
  }
  out.delta = std::move(delta);
  out.objective = best;
  return out;
}

}  // namespace

double penalized_objective(std::span<const double> delta, const InstanceSet& set,
                           const Scorer& scorer, const PenalizedConfig& cfg) {
  if (delta.size() != set.dim()) throw SchemaError("penalized: delta dimension mismatch");
  Objective obj(set, scorer, cfg);
  return obj.total(delta);
}

GroupDelta solve_penalized(const InstanceSet& set, const Scorer& scorer,
                           const PenalizedConfig& cfg) {
  Objective obj(set, scorer, cfg);
  const std::size_t d = set.dim();
  GroupDelta out = scorer.has_gradient() ? proximal_gradient(obj, d, cfg)
                                         : coordinate_search(obj, d, cfg);
  out.delta = obj.project(out.delta);
  out.mask = cfg.mask.empty() ? full_mask(d) : cfg.mask;
  out.C = cfg.C;
  out.flipped = flip_record(out.delta, set, scorer, cfg.y_cf);
  return out;
}

MaskedSolver make_penalized_solver(PenalizedConfig cfg) {
  return [cfg = std::move(cfg)](const InstanceSet& set, const Scorer& scorer,
                                const FeatureMask& mask) {
    PenalizedConfig local = cfg;
    local.mask = mask;
    return solve_penalized(set, scorer, local);
  };
}

}  // namespace groupcf
