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

#ifndef GROUPCF_MODELS_HPP_
#define GROUPCF_MODELS_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "groupcf/dataset.hpp"
#include "groupcf/matrix.hpp"

namespace groupcf {

// Classifier contract. score() is positive for retention; predict() is its
// sign with sign(0) = +1.
class Scorer {
 public:
  virtual ~Scorer() = default;

  virtual std::string kind() const = 0;
  virtual std::size_t dim() const = 0;
  virtual double score(std::span<const double> x) const = 0;
  // Probability of the retention class.
  virtual double retention_probability(std::span<const double> x) const = 0;

  // Scorers that expose d score / d x are optimized by gradient methods;
  // the rest by derivative-free search.
  virtual bool has_gradient() const { return false; }
  virtual Vector score_gradient(std::span<const double> x) const;

  int predict(std::span<const double> x) const { return score(x) >= 0.0 ? kRetention : kAttrition; }
};

class LinearScorer final : public Scorer {
 public:
  LinearScorer(Vector weights, double bias);

  std::string kind() const override { return "logistic"; }
  std::size_t dim() const override { return weights_.size(); }
  double score(std::span<const double> x) const override;
  double retention_probability(std::span<const double> x) const override;
  bool has_gradient() const override { return true; }
  Vector score_gradient(std::span<const double> x) const override;

  const Vector& weights() const { return weights_; }
  double bias() const { return bias_; }

 private:
  Vector weights_;
  double bias_;
};

// Axis-aligned binary tree in flat arrays. Node 0 is the root. feature[i] < 0
// marks a leaf; otherwise x[feature] <= threshold goes left. Leaf values are
// the fraction of retention samples that reached the leaf.
struct DecisionTree {
  std::vector<int> feature;
  std::vector<double> threshold;
  std::vector<int> left;
  std::vector<int> right;
  std::vector<double> value;

  std::size_t node_count() const { return feature.size(); }
  double evaluate(std::span<const double> x) const;
  std::size_t depth() const;
  // Throws SchemaError on out-of-range indices, cycles or bad leaf values.
  void validate(std::size_t dim) const;

  friend bool operator==(const DecisionTree&, const DecisionTree&) = default;
};

// Bagged trees; score = mean leaf value - 0.5.
class ForestScorer final : public Scorer {
 public:
  ForestScorer(std::vector<DecisionTree> trees, std::size_t dim);

  std::string kind() const override { return "forest"; }
  std::size_t dim() const override { return dim_; }
  double score(std::span<const double> x) const override;
  double retention_probability(std::span<const double> x) const override;

  const std::vector<DecisionTree>& trees() const { return trees_; }

 private:
  std::vector<DecisionTree> trees_;
  std::size_t dim_;
};

double sigmoid(double z);

// ---- logistic regression -------------------------------------------------

struct LogisticParams {
  double l2_strength = 0.0;
  int max_iter = 10000;
  double tol = 1e-6;
};

struct LogisticFit {
  LinearScorer scorer;
  int iterations = 0;
  double gradient_norm = 0.0;  // infinity norm at the returned parameters
  bool converged = false;
};

// Parameters are laid out as (w_1..w_d, b). The objective is the mean logistic
// loss plus l2/2 * |w|^2 (bias unpenalized).
double logistic_objective(std::span<const double> params, const LabeledData& data, double l2);
Vector logistic_gradient(std::span<const double> params, const LabeledData& data, double l2);

// Gradient descent with Armijo backtracking from the zero vector. Stops when
// the gradient infinity norm drops below tol; otherwise warns and returns the
// last iterate after max_iter steps.
LogisticFit train_logistic(const LabeledData& train, const LogisticParams& params);

// ---- random forest -------------------------------------------------------

struct ForestParams {
  int n_trees = 100;
  int max_depth = 5;
  std::uint64_t seed = 0;
  bool bootstrap = true;
};

// Bagged CART trees with Gini splits.
ForestScorer train_forest(const LabeledData& train, const ForestParams& params);

// ---- evaluation and instance selection ------------------------------------

double accuracy(const Scorer& scorer, const LabeledData& data);

// The instances predicted as attrition, i.e. the set explained by a group
// counterfactual.
struct InstanceSet {
  Matrix X;
  std::vector<std::size_t> row_ids;

  std::size_t size() const { return X.rows(); }
  std::size_t dim() const { return X.cols(); }
};

// Throws NothingToExplainError when no row is predicted as attrition.
InstanceSet select_attrition_set(const Scorer& scorer, const LabeledData& data);

// Throws SchemaError if a member is not predicted as attrition by scorer.
void validate_instance_set(const InstanceSet& set, const Scorer& scorer);

// ---- hyper-parameter grid ---------------------------------------------------

struct TuningResult {
  std::string params;  // human-readable label, e.g. "l2=0.01"
  double test_accuracy = 0.0;
};

struct TunedModel {
  std::unique_ptr<Scorer> scorer;
  std::vector<TuningResult> grid;
  std::size_t selected = 0;
};

// Trains every grid point on train and keeps the one with the best test
// accuracy (first wins ties).
TunedModel tune_logistic(const LabeledData& train, const LabeledData& test,
                         const std::vector<double>& l2_grid, int max_iter, double tol);
TunedModel tune_forest(const LabeledData& train, const LabeledData& test,
                       const std::vector<int>& n_trees_grid, const std::vector<int>& depth_grid,
                       std::uint64_t seed);

}  // namespace groupcf

#endif  // GROUPCF_MODELS_HPP_
