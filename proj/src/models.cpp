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

#include "groupcf/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "groupcf/errors.hpp"
#include "groupcf/random.hpp"

namespace groupcf {

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

namespace {

// log(1 + exp(z)) without overflow.
double softplus(double z) {
  if (z > 0.0) return z + std::log1p(std::exp(-z));
  return std::log1p(std::exp(z));
}

}  // namespace

Vector Scorer::score_gradient(std::span<const double>) const {
  throw SchemaError(kind() + " scorer has no analytic gradient");
}

LinearScorer::LinearScorer(Vector weights, double bias)
    : weights_(std::move(weights)), bias_(bias) {
  if (weights_.empty()) throw SchemaError("LinearScorer: no weights");
}

double LinearScorer::score(std::span<const double> x) const {
  if (x.size() != weights_.size()) throw SchemaError("LinearScorer: dimension mismatch");
  return dot(weights_, x) + bias_;
}

double LinearScorer::retention_probability(std::span<const double> x) const {
  return sigmoid(score(x));
}

Vector LinearScorer::score_gradient(std::span<const double>) const { return weights_; }

double DecisionTree::evaluate(std::span<const double> x) const {
  int node = 0;
  while (feature[node] >= 0) {
    node = x[feature[node]] <= threshold[node] ? left[node] : right[node];
  }
  return value[node];
}

std::size_t DecisionTree::depth() const {
  // Nodes are stored parent-before-child, so one forward pass suffices.
  std::vector<std::size_t> level(node_count(), 0);
  std::size_t deepest = 0;
  for (std::size_t i = 0; i < node_count(); ++i) {
    deepest = std::max(deepest, level[i]);
    if (feature[i] >= 0) {
      level[left[i]] = level[i] + 1;
      level[right[i]] = level[i] + 1;
    }
  }
  return deepest;
}

void DecisionTree::validate(std::size_t dim) const {
  const std::size_t n = feature.size();
  if (n == 0) throw SchemaError("tree has no nodes");
  if (threshold.size() != n || left.size() != n || right.size() != n || value.size() != n) {
    throw SchemaError("tree arrays have different lengths");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (feature[i] < 0) {
      if (!(value[i] >= 0.0 && value[i] <= 1.0)) throw SchemaError("tree leaf value outside [0,1]");
      continue;
    }
    if (static_cast<std::size_t>(feature[i]) >= dim) throw SchemaError("tree split feature out of range");
    const auto child_ok = [&](int c) { return c > static_cast<int>(i) && c < static_cast<int>(n); };
    if (!child_ok(left[i]) || !child_ok(right[i])) throw SchemaError("tree child index invalid");
  }
}

ForestScorer::ForestScorer(std::vector<DecisionTree> trees, std::size_t dim)
    : trees_(std::move(trees)), dim_(dim) {
  if (trees_.empty()) throw SchemaError("ForestScorer: no trees");
  for (const auto& t : trees_) t.validate(dim_);
}

double ForestScorer::retention_probability(std::span<const double> x) const {
  if (x.size() != dim_) throw SchemaError("ForestScorer: dimension mismatch");
  double sum = 0.0;
  for (const auto& t : trees_) sum += t.evaluate(x);
  return sum / static_cast<double>(trees_.size());
}

double ForestScorer::score(std::span<const double> x) const {
  return retention_probability(x) - 0.5;
}

// ---- logistic regression -------------------------------------------------

double logistic_objective(std::span<const double> params, const LabeledData& data, double l2) {
  const std::size_t d = data.X.cols();
  const auto w = params.first(d);
  const double b = params[d];
  double loss = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    loss += softplus(-data.y[i] * (dot(w, data.X.row(i)) + b));
  }
  loss /= static_cast<double>(data.size());
  return loss + 0.5 * l2 * dot(w, w);
}

Vector logistic_gradient(std::span<const double> params, const LabeledData& data, double l2) {
  const std::size_t d = data.X.cols();
  const auto w = params.first(d);
  const double b = params[d];
  Vector grad(d + 1, 0.0);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto x = data.X.row(i);
    const double y = data.y[i];
    const double coef = -y * sigmoid(-y * (dot(w, x) + b));
    for (std::size_t j = 0; j < d; ++j) grad[j] += coef * x[j];
    grad[d] += coef;
  }
  const double inv_n = 1.0 / static_cast<double>(data.size());
  for (auto& g : grad) g *= inv_n;
  for (std::size_t j = 0; j < d; ++j) grad[j] += l2 * w[j];
  return grad;
}

namespace {

double inf_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

LogisticFit train_logistic(const LabeledData& train, const LogisticParams& params) {
  if (train.count(kAttrition) == 0 || train.count(kRetention) == 0) {
    throw SchemaError("train_logistic: both classes must be present");
  }
  if (params.l2_strength < 0.0) throw SchemaError("train_logistic: negative l2 strength");
  const std::size_t d = train.X.cols();
  Vector theta(d + 1, 0.0);
  double f = logistic_objective(theta, train, params.l2_strength);
  Vector grad = logistic_gradient(theta, train, params.l2_strength);
  double step = 1.0;
  int iter = 0;
  Vector candidate(d + 1);
  for (; iter < params.max_iter && inf_norm(grad) >= params.tol; ++iter) {
    const double g2 = dot(grad, grad);
    double f_new = f;
    // Armijo backtracking; the trial step grows again after each success.
    for (int shrink = 0; shrink < 60; ++shrink) {
      for (std::size_t j = 0; j <= d; ++j) candidate[j] = theta[j] - step * grad[j];
      f_new = logistic_objective(candidate, train, params.l2_strength);
      if (f_new <= f - 0.5 * step * g2) break;
      step *= 0.5;
    }
    if (!(f_new <= f)) break;  // no descent possible at working precision
    theta.swap(candidate);
    f = f_new;
    grad = logistic_gradient(theta, train, params.l2_strength);
    step = std::min(step * 2.0, 1e3);
  }
  LogisticFit fit{LinearScorer(Vector(theta.begin(), theta.begin() + static_cast<std::ptrdiff_t>(d)),
                               theta[d]),
                  iter, inf_norm(grad), inf_norm(grad) < params.tol};
  if (!fit.converged) {
    std::ostringstream msg;
    msg << "logistic regression stopped after " << iter
        << " iterations with gradient norm " << fit.gradient_norm;
    log_warning(msg.str());
  }
  return fit;
}

// ---- random forest -------------------------------------------------------

namespace {

struct NodeStats {
  double n = 0.0;
  double pos = 0.0;
  double gini() const {
    if (n <= 0.0) return 0.0;
    const double p = pos / n;
    return 2.0 * p * (1.0 - p);
  }
};

class TreeBuilder {
 public:
  TreeBuilder(const LabeledData& data, int max_depth) : data_(data), max_depth_(max_depth) {}

  DecisionTree build(std::vector<std::size_t> samples) {
    tree_ = DecisionTree{};
    grow(std::move(samples), 0);
    return std::move(tree_);
  }

 private:
  int add_leaf(const NodeStats& stats) {
    tree_.feature.push_back(-1);
    tree_.threshold.push_back(0.0);
    tree_.left.push_back(-1);
    tree_.right.push_back(-1);
    tree_.value.push_back(stats.n > 0.0 ? stats.pos / stats.n : 0.5);
    return static_cast<int>(tree_.feature.size() - 1);
  }

  int grow(std::vector<std::size_t> samples, int depth) {
    NodeStats total;
    for (auto i : samples) {
      total.n += 1.0;
      total.pos += data_.y[i] == kRetention ? 1.0 : 0.0;
    }
    if (depth >= max_depth_ || total.pos == 0.0 || total.pos == total.n) return add_leaf(total);

    const double parent = total.gini();
    double best_impurity = parent;
    int best_feature = -1;
    double best_threshold = 0.0;
    std::vector<std::size_t> order = samples;
    for (std::size_t j = 0; j < data_.X.cols(); ++j) {
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return data_.X(a, j) < data_.X(b, j); });
      NodeStats left;
      for (std::size_t k = 0; k + 1 < order.size(); ++k) {
        left.n += 1.0;
        left.pos += data_.y[order[k]] == kRetention ? 1.0 : 0.0;
        const double v = data_.X(order[k], j);
        const double next = data_.X(order[k + 1], j);
        if (!(next > v)) continue;
        const NodeStats right{total.n - left.n, total.pos - left.pos};
        const double impurity = (left.n * left.gini() + right.n * right.gini()) / total.n;
        if (impurity < best_impurity - 1e-12) {
          best_impurity = impurity;
          best_feature = static_cast<int>(j);
          best_threshold = 0.5 * (v + next);
        }
      }
    }
    if (best_feature < 0) return add_leaf(total);

    std::vector<std::size_t> left_samples, right_samples;
    for (auto i : samples) {
      (data_.X(i, best_feature) <= best_threshold ? left_samples : right_samples).push_back(i);
    }
    const int node = static_cast<int>(tree_.feature.size());
    tree_.feature.push_back(best_feature);
    tree_.threshold.push_back(best_threshold);
    tree_.left.push_back(-1);
    tree_.right.push_back(-1);
    tree_.value.push_back(total.pos / total.n);
    const int l = grow(std::move(left_samples), depth + 1);
    const int r = grow(std::move(right_samples), depth + 1);
    tree_.left[node] = l;
    tree_.right[node] = r;
    return node;
  }

  const LabeledData& data_;
  int max_depth_;
  DecisionTree tree_;
};

}  // namespace

ForestScorer train_forest(const LabeledData& train, const ForestParams& params) {
  if (params.n_trees < 1) throw SchemaError("train_forest: n_trees must be >= 1");
  if (params.max_depth < 1) throw SchemaError("train_forest: max_depth must be >= 1");
  if (train.size() < 2) throw SchemaError("train_forest: need at least two rows");
  Rng rng(params.seed);
  TreeBuilder builder(train, params.max_depth);
  std::vector<DecisionTree> trees;
  trees.reserve(static_cast<std::size_t>(params.n_trees));
  const std::size_t n = train.size();
  for (int t = 0; t < params.n_trees; ++t) {
    std::vector<std::size_t> samples(n);
    if (params.bootstrap) {
      for (auto& s : samples) s = rng.uniform_index(n);
    } else {
      std::iota(samples.begin(), samples.end(), std::size_t{0});
    }
    trees.push_back(builder.build(std::move(samples)));
  }
  return ForestScorer(std::move(trees), train.X.cols());
}

// ---- evaluation and instance selection ------------------------------------

double accuracy(const Scorer& scorer, const LabeledData& data) {
  if (data.size() == 0) throw SchemaError("accuracy: empty data");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < data.size(); ++i) hits += scorer.predict(data.X.row(i)) == data.y[i];
  return static_cast<double>(hits) / static_cast<double>(data.size());
}

InstanceSet select_attrition_set(const Scorer& scorer, const LabeledData& data) {
  InstanceSet set;
  set.X = Matrix(0, data.X.cols());
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (scorer.predict(data.X.row(i)) == kAttrition) {
      set.X.append_row(data.X.row(i));
      set.row_ids.push_back(data.row_ids[i]);
    }
  }
  if (set.size() == 0) {
    throw NothingToExplainError("nothing to explain: no instance is predicted as attrition");
  }
  return set;
}

void validate_instance_set(const InstanceSet& set, const Scorer& scorer) {
  if (set.row_ids.size() != set.size()) throw SchemaError("instance set: row id count mismatch");
  if (set.dim() != scorer.dim()) throw SchemaError("instance set: dimension mismatch");
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (scorer.predict(set.X.row(i)) != kAttrition) {
      throw SchemaError("instance set: row " + std::to_string(set.row_ids[i]) +
                        " is not predicted as attrition");
    }
  }
}

// ---- hyper-parameter grid ---------------------------------------------------

TunedModel tune_logistic(const LabeledData& train, const LabeledData& test,
                         const std::vector<double>& l2_grid, int max_iter, double tol) {
  if (l2_grid.empty()) throw SchemaError("tune_logistic: empty grid");
  TunedModel out;
  double best = -1.0;
  for (double l2 : l2_grid) {
    auto fit = train_logistic(train, {l2, max_iter, tol});
    std::ostringstream label;
    label << "l2=" << l2;
    const double acc = accuracy(fit.scorer, test);
    out.grid.push_back({label.str(), acc});
    if (acc > best) {
      best = acc;
      out.selected = out.grid.size() - 1;
      out.scorer = std::make_unique<LinearScorer>(fit.scorer);
    }
  }
  return out;
}

TunedModel tune_forest(const LabeledData& train, const LabeledData& test,
                       const std::vector<int>& n_trees_grid, const std::vector<int>& depth_grid,
                       std::uint64_t seed) {
  if (n_trees_grid.empty() || depth_grid.empty()) throw SchemaError("tune_forest: empty grid");
  TunedModel out;
  double best = -1.0;
  for (int n_trees : n_trees_grid) {
    for (int depth : depth_grid) {
      auto forest = train_forest(train, {n_trees, depth, seed, true});
      const double acc = accuracy(forest, test);
      out.grid.push_back({"n_trees=" + std::to_string(n_trees) + ",max_depth=" + std::to_string(depth), acc});
      if (acc > best) {
        best = acc;
        out.selected = out.grid.size() - 1;
        out.scorer = std::make_unique<ForestScorer>(std::move(forest));
      }
    }
  }
  return out;
}

}  // namespace groupcf
