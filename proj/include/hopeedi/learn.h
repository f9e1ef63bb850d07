#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hopeedi/features.h"
#include "hopeedi/labels.h"

namespace hopeedi {

enum class ModelKind { LogReg, LinearSvm, RandomForest };

std::string_view model_kind_name(ModelKind kind);  // "logreg", "svm", "rf"
std::optional<ModelKind> model_kind_from_name(std::string_view name);

struct LogRegParams {
  double lr = 0.1;
  int epochs = 500;
  double l2 = 1e-4;
};

struct SvmParams {
  double lr = 0.01;
  int epochs = 500;
  double c = 1.0;
};

struct ForestParams {
  std::size_t n_trees = 100;
  std::size_t max_depth = 16;
  // Fraction of features tried at each node; empty means sqrt(dim)/dim.
  std::optional<double> feature_frac;
  // Test hooks: train every tree on the full data, or seed every tree alike.
  bool bootstrap = true;
  bool same_seed_per_tree = false;
};

// Class-by-dimension weight matrix (row-major) plus one bias per class.
struct LinearWeights {
  std::size_t n_classes = 0;
  std::size_t dim = 0;
  std::vector<double> w;
  std::vector<double> b;

  LinearWeights() = default;
  LinearWeights(std::size_t classes, std::size_t d)
      : n_classes(classes), dim(d), w(classes * d, 0.0), b(classes, 0.0) {}

  std::span<double> row(std::size_t c) { return {w.data() + c * dim, dim}; }
  std::span<const double> row(std::size_t c) const { return {w.data() + c * dim, dim}; }
  double score(std::size_t c, const FeatureVector& x) const { return x.dot(row(c)) + b[c]; }
};

// Internal nodes have feature >= 0 and send x[feature] <= threshold left.
// Leaves have feature == -1 and carry a class index.
struct TreeNode {
  std::int32_t feature = -1;
  double threshold = 0.0;
  std::int32_t left = -1;
  std::int32_t right = -1;
  std::uint32_t label = 0;
};

struct DecisionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root
  std::size_t max_depth = 0;

  std::size_t predict_index(const FeatureVector& x) const;
  // Longest root-to-leaf path, in edges.
  std::size_t depth() const;
};

struct TrainedModel {
  ModelKind kind = ModelKind::LogReg;
  std::vector<Label> classes;  // canonical label order
  std::size_t dim = 0;
  std::uint64_t train_seed = 0;
  // Recorded verbatim in the model file header.
  std::vector<std::pair<std::string, std::string>> hyperparameters;

  LinearWeights linear;             // LogReg, LinearSvm
  std::vector<DecisionTree> trees;  // RandomForest
};

struct Prediction {
  Label label = Label::Hope;
  std::vector<double> scores;  // aligned with model.classes

  double score_of(const TrainedModel& model, Label l) const;
};

// Mean cross-entropy of softmax(Wx + b) plus (l2 / 2) * ||W||^2.
double logreg_objective(const LinearWeights& params, std::span<const FeatureVector> x,
                        std::span<const std::size_t> y, double l2);
LinearWeights logreg_gradient(const LinearWeights& params, std::span<const FeatureVector> x,
                              std::span<const std::size_t> y, double l2);

// Binary hinge objective of one one-vs-rest row, targets in {-1, +1}:
//   0.5 * ||w||^2 + c * mean(max(0, 1 - t * (w.x + b)))
double svm_objective(std::span<const double> w, double b, std::span<const FeatureVector> x,
                     std::span<const int> targets, double c);
// Subgradient of svm_objective; the last element is d/db.
std::vector<double> svm_subgradient(std::span<const double> w, double b,
                                    std::span<const FeatureVector> x,
                                    std::span<const int> targets, double c);

// Softmax regression by full-batch gradient descent from zero weights. The
// seed is recorded but does not affect full-batch training.
TrainedModel train_logreg(std::span<const FeatureVector> x, std::span<const Label> y,
                          const LogRegParams& params = {}, std::uint64_t seed = 0);

// One-vs-rest linear SVMs by full-batch subgradient descent on the primal.
TrainedModel train_linear_svm(std::span<const FeatureVector> x, std::span<const Label> y,
                              const SvmParams& params = {}, std::uint64_t seed = 0);

// Bagged Gini trees with a random feature subset of ceil(frac * dim) per
// node. A single-label dataset is accepted and yields single-leaf trees.
TrainedModel train_random_forest(std::span<const FeatureVector> x, std::span<const Label> y,
                                 const ForestParams& params = {}, std::uint64_t seed = 0);

// Argmax of the class scores (softmax probabilities, SVM margins, or forest
// vote fractions); ties go to the earlier class. Throws DimensionMismatch.
Prediction predict(const TrainedModel& model, const FeatureVector& x);

}  // namespace hopeedi
