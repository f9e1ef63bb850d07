#include "hopeedi/learn.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>

#include "hopeedi/error.h"
#include "hopeedi/rng.h"

namespace hopeedi {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Sorted distinct labels and each row's index into them.
struct EncodedLabels {
  std::vector<Label> classes;
  std::vector<std::size_t> index;
};

EncodedLabels encode_labels(std::span<const Label> y) {
  EncodedLabels enc;
  std::set<Label> distinct(y.begin(), y.end());
  enc.classes.assign(distinct.begin(), distinct.end());
  enc.index.reserve(y.size());
  for (Label l : y) {
    enc.index.push_back(static_cast<std::size_t>(
        std::lower_bound(enc.classes.begin(), enc.classes.end(), l) - enc.classes.begin()));
  }
  return enc;
}

std::size_t check_training_set(std::span<const FeatureVector> x, std::span<const Label> y,
                               bool allow_single_class) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::DimensionMismatch, std::to_string(x.size()) + " vectors but " +
                                                  std::to_string(y.size()) + " labels");
  }
  if (x.size() < 2) throw Error(ErrorCode::TooFewRows, "need at least 2 training rows");
  const std::size_t dim = x.front().dim();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].dim() != dim) {
      throw Error(ErrorCode::DimensionMismatch, "row " + std::to_string(i) + " has dim " +
                                                    std::to_string(x[i].dim()) + ", expected " +
                                                    std::to_string(dim));
    }
  }
  if (!allow_single_class && std::all_of(y.begin(), y.end(), [&](Label l) { return l == y[0]; })) {
    throw Error(ErrorCode::SingleClass, "training labels contain a single class");
  }
  return dim;
}

void softmax_in_place(std::vector<double>& z) {
  const double m = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (auto& v : z) {
    v = std::exp(v - m);
    sum += v;
  }
  for (auto& v : z) v /= sum;
}

std::size_t argmax_first(std::span<const double> scores) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best]) best = i;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Decision trees

struct TreeBuilder {
  std::span<const FeatureVector> x;
  std::span<const std::size_t> y;
  std::size_t n_classes;
  std::size_t features_per_node;
  std::size_t max_depth;
  Rng& rng;
  DecisionTree tree;

  // Gini impurity scaled by node size: n - sum_k count_k^2 / n.
  static double scaled_gini(std::span<const std::size_t> counts, std::size_t n) {
    if (n == 0) return 0.0;
    double sq = 0.0;
    for (auto c : counts) sq += static_cast<double>(c) * static_cast<double>(c);
    return static_cast<double>(n) - sq / static_cast<double>(n);
  }

  std::uint32_t majority(std::span<const std::size_t> counts) const {
    std::size_t best = 0;
    for (std::size_t k = 1; k < counts.size(); ++k) {
      if (counts[k] > counts[best]) best = k;
    }
    return static_cast<std::uint32_t>(best);
  }

  // Floyd's sampling; the result is sorted so ties between features resolve
  // to the smaller index.
  std::vector<std::size_t> sample_features(std::size_t dim) {
    std::set<std::size_t> chosen;
    for (std::size_t j = dim - features_per_node; j < dim; ++j) {
      const auto t = static_cast<std::size_t>(rng.below(j + 1));
      if (!chosen.insert(t).second) chosen.insert(j);
    }
    return {chosen.begin(), chosen.end()};
  }

  std::int32_t build(std::vector<std::size_t> rows, std::size_t depth) {
    const auto node_id = static_cast<std::int32_t>(tree.nodes.size());
    tree.nodes.emplace_back();

    std::vector<std::size_t> counts(n_classes, 0);
    for (auto r : rows) ++counts[y[r]];
    const auto label = majority(counts);
    const auto non_empty = std::count_if(counts.begin(), counts.end(), [](auto c) { return c > 0; });
    if (non_empty <= 1 || depth >= max_depth || rows.size() < 2) {
      tree.nodes[node_id].label = label;
      return node_id;
    }

    const std::size_t n = rows.size();
    const double parent = scaled_gini(counts, n);
    double best_score = parent;
    std::int32_t best_feature = -1;
    double best_threshold = 0.0;

    std::vector<std::pair<double, std::size_t>> column(n);
    std::vector<std::size_t> left(n_classes), right(n_classes);
    for (auto f : sample_features(x[rows[0]].dim())) {
      for (std::size_t i = 0; i < n; ++i) column[i] = {x[rows[i]].at(f), y[rows[i]]};
      std::sort(column.begin(), column.end());
      if (column.front().first == column.back().first) continue;

      std::fill(left.begin(), left.end(), 0);
      right = counts;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        ++left[column[i].second];
        --right[column[i].second];
        if (column[i].first == column[i + 1].first) continue;
        const double score = scaled_gini(left, i + 1) + scaled_gini(right, n - i - 1);
        if (score < best_score - 1e-12) {
          best_score = score;
          best_feature = static_cast<std::int32_t>(f);
          const double lo = column[i].first, hi = column[i + 1].first;
          double mid = lo + (hi - lo) / 2.0;
          if (!(mid < hi)) mid = lo;
          best_threshold = mid;
        }
      }
    }

    if (best_feature < 0) {
      tree.nodes[node_id].label = label;
      return node_id;
    }

    std::vector<std::size_t> left_rows, right_rows;
    for (auto r : rows) {
      (x[r].at(static_cast<std::size_t>(best_feature)) <= best_threshold ? left_rows : right_rows)
          .push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();
    const auto l = build(std::move(left_rows), depth + 1);
    const auto r = build(std::move(right_rows), depth + 1);
    auto& node = tree.nodes[node_id];
    node.feature = best_feature;
    node.threshold = best_threshold;
    node.left = l;
    node.right = r;
    node.label = label;
    return node_id;
  }
};

std::uint64_t tree_seed(std::uint64_t base, std::size_t tree_index) {
  // splitmix64 finalizer over (base, index)
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (tree_index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::string_view model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::LogReg: return "logreg";
    case ModelKind::LinearSvm: return "svm";
    case ModelKind::RandomForest: return "rf";
  }
  return "?";
}

std::optional<ModelKind> model_kind_from_name(std::string_view name) {
  if (name == "logreg" || name == "lr") return ModelKind::LogReg;
  if (name == "svm") return ModelKind::LinearSvm;
  if (name == "rf" || name == "random_forest") return ModelKind::RandomForest;
  return std::nullopt;
}

std::size_t DecisionTree::predict_index(const FeatureVector& x) const {
  std::size_t id = 0;
  while (nodes[id].feature >= 0) {
    const auto& node = nodes[id];
    id = static_cast<std::size_t>(x.at(static_cast<std::size_t>(node.feature)) <= node.threshold
                                      ? node.left
                                      : node.right);
  }
  return nodes[id].label;
}

std::size_t DecisionTree::depth() const {
  std::size_t deepest = 0;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
  while (!stack.empty()) {
    const auto [id, d] = stack.back();
    stack.pop_back();
    deepest = std::max(deepest, d);
    if (nodes[id].feature >= 0) {
      stack.emplace_back(static_cast<std::size_t>(nodes[id].left), d + 1);
      stack.emplace_back(static_cast<std::size_t>(nodes[id].right), d + 1);
    }
  }
  return deepest;
}

double Prediction::score_of(const TrainedModel& model, Label l) const {
  for (std::size_t i = 0; i < model.classes.size(); ++i) {
    if (model.classes[i] == l) return scores[i];
  }
  return 0.0;
}

double logreg_objective(const LinearWeights& params, std::span<const FeatureVector> x,
                        std::span<const std::size_t> y, double l2) {
  double loss = 0.0;
  std::vector<double> z(params.n_classes);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t c = 0; c < params.n_classes; ++c) z[c] = params.score(c, x[i]);
    const double m = *std::max_element(z.begin(), z.end());
    double lse = 0.0;
    for (double v : z) lse += std::exp(v - m);
    loss += m + std::log(lse) - z[y[i]];
  }
  loss /= static_cast<double>(x.size());
  double sq = 0.0;
  for (double w : params.w) sq += w * w;
  return loss + 0.5 * l2 * sq;
}

LinearWeights logreg_gradient(const LinearWeights& params, std::span<const FeatureVector> x,
                              std::span<const std::size_t> y, double l2) {
  LinearWeights grad(params.n_classes, params.dim);
  const double inv_n = 1.0 / static_cast<double>(x.size());
  std::vector<double> p(params.n_classes);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t c = 0; c < params.n_classes; ++c) p[c] = params.score(c, x[i]);
    softmax_in_place(p);
    for (std::size_t c = 0; c < params.n_classes; ++c) {
      const double residual = (p[c] - (y[i] == c ? 1.0 : 0.0)) * inv_n;
      x[i].add_scaled_to(grad.row(c), residual);
      grad.b[c] += residual;
    }
  }
  for (std::size_t k = 0; k < grad.w.size(); ++k) grad.w[k] += l2 * params.w[k];
  return grad;
}

double svm_objective(std::span<const double> w, double b, std::span<const FeatureVector> x,
                     std::span<const int> targets, double c) {
  double hinge = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    hinge += std::max(0.0, 1.0 - targets[i] * (x[i].dot(w) + b));
  }
  double sq = 0.0;
  for (double v : w) sq += v * v;
  return 0.5 * sq + c * hinge / static_cast<double>(x.size());
}

std::vector<double> svm_subgradient(std::span<const double> w, double b,
                                    std::span<const FeatureVector> x,
                                    std::span<const int> targets, double c) {
  std::vector<double> grad(w.begin(), w.end());
  grad.push_back(0.0);
  const double scale = c / static_cast<double>(x.size());
  std::span<double> gw(grad.data(), w.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (targets[i] * (x[i].dot(w) + b) < 1.0) {
      x[i].add_scaled_to(gw, -scale * targets[i]);
      grad.back() -= scale * targets[i];
    }
  }
  return grad;
}

TrainedModel train_logreg(std::span<const FeatureVector> x, std::span<const Label> y,
                          const LogRegParams& params, std::uint64_t seed) {
  const auto dim = check_training_set(x, y, false);
  const auto enc = encode_labels(y);

  LinearWeights weights(enc.classes.size(), dim);
  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    const auto grad = logreg_gradient(weights, x, enc.index, params.l2);
    for (std::size_t k = 0; k < weights.w.size(); ++k) weights.w[k] -= params.lr * grad.w[k];
    for (std::size_t c = 0; c < weights.b.size(); ++c) weights.b[c] -= params.lr * grad.b[c];
  }

  TrainedModel model;
  model.kind = ModelKind::LogReg;
  model.classes = enc.classes;
  model.dim = dim;
  model.train_seed = seed;
  model.hyperparameters = {{"lr", fmt_double(params.lr)},
                           {"epochs", std::to_string(params.epochs)},
                           {"l2", fmt_double(params.l2)}};
  model.linear = std::move(weights);
  return model;
}

TrainedModel train_linear_svm(std::span<const FeatureVector> x, std::span<const Label> y,
                              const SvmParams& params, std::uint64_t seed) {
  const auto dim = check_training_set(x, y, false);
  const auto enc = encode_labels(y);

  LinearWeights weights(enc.classes.size(), dim);
  std::vector<int> targets(x.size());
  for (std::size_t c = 0; c < enc.classes.size(); ++c) {
    for (std::size_t i = 0; i < x.size(); ++i) targets[i] = enc.index[i] == c ? 1 : -1;
    auto w = weights.row(c);
    double& b = weights.b[c];
    for (int epoch = 0; epoch < params.epochs; ++epoch) {
      const auto grad = svm_subgradient(w, b, x, targets, params.c);
      for (std::size_t k = 0; k < dim; ++k) w[k] -= params.lr * grad[k];
      b -= params.lr * grad.back();
    }
  }

  TrainedModel model;
  model.kind = ModelKind::LinearSvm;
  model.classes = enc.classes;
  model.dim = dim;
  model.train_seed = seed;
  model.hyperparameters = {{"lr", fmt_double(params.lr)},
                           {"epochs", std::to_string(params.epochs)},
                           {"c", fmt_double(params.c)}};
  model.linear = std::move(weights);
  return model;
}

TrainedModel train_random_forest(std::span<const FeatureVector> x, std::span<const Label> y,
                                 const ForestParams& params, std::uint64_t seed) {
  const auto dim = check_training_set(x, y, true);
  if (params.n_trees < 1) throw Error(ErrorCode::BadArgument, "n_trees must be >= 1");
  if (params.max_depth < 1) throw Error(ErrorCode::BadArgument, "max_depth must be >= 1");
  const double frac = params.feature_frac.value_or(
      std::sqrt(static_cast<double>(dim)) / static_cast<double>(dim));
  if (!(frac > 0.0 && frac <= 1.0)) {
    throw Error(ErrorCode::BadArgument, "feature_frac must be in (0,1]");
  }
  const auto per_node = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::ceil(frac * static_cast<double>(dim) - 1e-9)), 1, dim);

  const auto enc = encode_labels(y);
  TrainedModel model;
  model.kind = ModelKind::RandomForest;
  model.classes = enc.classes;
  model.dim = dim;
  model.train_seed = seed;
  model.hyperparameters = {{"n_trees", std::to_string(params.n_trees)},
                           {"max_depth", std::to_string(params.max_depth)},
                           {"feature_frac", fmt_double(frac)},
                           {"bootstrap", params.bootstrap ? "1" : "0"},
                           {"same_seed_per_tree", params.same_seed_per_tree ? "1" : "0"}};

  const std::size_t n = x.size();
  for (std::size_t t = 0; t < params.n_trees; ++t) {
    Rng rng(params.same_seed_per_tree ? seed : tree_seed(seed, t));
    std::vector<std::size_t> rows(n);
    if (params.bootstrap) {
      for (auto& r : rows) r = static_cast<std::size_t>(rng.below(n));
    } else {
      std::iota(rows.begin(), rows.end(), std::size_t{0});
    }
    TreeBuilder builder{x, enc.index, enc.classes.size(), per_node, params.max_depth, rng, {}};
    builder.tree.max_depth = params.max_depth;
    builder.build(std::move(rows), 0);
    model.trees.push_back(std::move(builder.tree));
  }
  return model;
}

Prediction predict(const TrainedModel& model, const FeatureVector& x) {
  if (x.dim() != model.dim) {
    throw Error(ErrorCode::DimensionMismatch, "input dim " + std::to_string(x.dim()) +
                                                  ", model dim " + std::to_string(model.dim));
  }
  Prediction out;
  out.scores.assign(model.classes.size(), 0.0);
  switch (model.kind) {
    case ModelKind::LogReg:
      for (std::size_t c = 0; c < model.classes.size(); ++c) {
        out.scores[c] = model.linear.score(c, x);
      }
      softmax_in_place(out.scores);
      break;
    case ModelKind::LinearSvm:
      for (std::size_t c = 0; c < model.classes.size(); ++c) {
        out.scores[c] = model.linear.score(c, x);
      }
      break;
    case ModelKind::RandomForest: {
      for (const auto& tree : model.trees) out.scores[tree.predict_index(x)] += 1.0;
      const double n = static_cast<double>(model.trees.size());
      for (auto& s : out.scores) s /= n;
      break;
    }
  }
  out.label = model.classes[argmax_first(out.scores)];
  return out;
}

}  // namespace hopeedi
