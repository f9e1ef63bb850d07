#include "hopeedi/ensemble.h"

#include <algorithm>
#include <array>
#include <fstream>
#include <future>

#include "hopeedi/error.h"
#include "hopeedi/metrics.h"
#include "hopeedi/unicode.h"

namespace hopeedi {

std::string_view tie_break_name(TieBreak t) {
  return t == TieBreak::ClassOrder ? "class-order" : "prior";
}

std::optional<TieBreak> tie_break_from_name(std::string_view name) {
  if (name == "class-order" || name == "class_order") return TieBreak::ClassOrder;
  if (name == "prior" || name == "majority-class-prior") return TieBreak::MajorityClassPrior;
  return std::nullopt;
}

Label majority_vote(std::span<const Label> predictions, TieBreak tie_break) {
  if (predictions.empty()) throw Error(ErrorCode::EmptyPredictions, "no votes");
  std::array<std::size_t, kAllLabels.size()> votes{};
  for (Label l : predictions) ++votes[static_cast<std::size_t>(l)];

  const auto top = *std::max_element(votes.begin(), votes.end());
  if (tie_break == TieBreak::MajorityClassPrior &&
      votes[static_cast<std::size_t>(Label::NotHope)] == top) {
    return Label::NotHope;
  }
  for (Label l : kAllLabels) {
    if (votes[static_cast<std::size_t>(l)] == top) return l;
  }
  return Label::NotHope;  // unreachable
}

TrainedModel train_model(std::span<const FeatureVector> x, std::span<const Label> y,
                         const TrainerConfig& trainer, std::uint64_t seed) {
  switch (trainer.kind) {
    case ModelKind::LogReg: return train_logreg(x, y, trainer.logreg, seed);
    case ModelKind::LinearSvm: return train_linear_svm(x, y, trainer.svm, seed);
    case ModelKind::RandomForest: return train_random_forest(x, y, trainer.forest, seed);
  }
  throw Error(ErrorCode::BadArgument, "unknown model kind");
}

std::optional<std::string> EnsembleConfig::validate() const {
  if (k == 0) throw Error(ErrorCode::BadArgument, "ensemble size k must be >= 1");
  if (k % 2 == 0) {
    return "ensemble size " + std::to_string(k) + " is even; ties are resolved by the '" +
           std::string(tie_break_name(tie_break)) + "' rule";
  }
  return std::nullopt;
}

std::vector<Label> Ensemble::member_predictions(const FeatureVector& x) const {
  std::vector<Label> votes;
  votes.reserve(members.size());
  for (const auto& m : members) {
    const auto p = hopeedi::predict(m.model, x);
    // A member whose top scores tie casts its vote by the ensemble's tie rule,
    // so an untrained member leans to the prior class like the vote does.
    const double top = *std::max_element(p.scores.begin(), p.scores.end());
    std::vector<Label> tied;
    for (std::size_t c = 0; c < p.scores.size(); ++c) {
      if (p.scores[c] == top) tied.push_back(m.model.classes[c]);
    }
    votes.push_back(tied.size() > 1 ? majority_vote(tied, config.tie_break) : p.label);
  }
  return votes;
}

Label Ensemble::predict(const FeatureVector& x) const {
  return majority_vote(member_predictions(x), config.tie_break);
}

Ensemble train_ensemble(std::span<const FeatureVector> x, std::span<const Label> y,
                        const EnsembleConfig& config, const TrainerConfig& trainer) {
  config.validate();
  if (x.size() != y.size()) {
    throw Error(ErrorCode::DimensionMismatch, "feature and label counts differ");
  }

  auto train_member = [&](std::size_t i) {
    EnsembleMember member;
    member.split_seed = config.base_seed + i;
    const auto plan = make_split(x.size(), member.split_seed, config.fraction_train);
    const auto train_ids = plan.train_ids();
    const auto val_ids = plan.validation_ids();

    std::vector<FeatureVector> train_x;
    std::vector<Label> train_y;
    train_x.reserve(train_ids.size());
    for (auto id : train_ids) {
      train_x.push_back(x[id]);
      train_y.push_back(y[id]);
    }
    member.model = train_model(train_x, train_y, trainer, member.split_seed);
    member.train_rows = train_ids.size();
    member.validation_rows = val_ids.size();

    std::vector<Label> gold, pred;
    for (auto id : val_ids) {
      gold.push_back(y[id]);
      pred.push_back(predict(member.model, x[id]).label);
    }
    member.validation_weighted_f1 = aggregate(confusion(gold, pred)).weighted.f1;
    return member;
  };

  std::vector<std::future<EnsembleMember>> jobs;
  jobs.reserve(config.k);
  for (std::size_t i = 0; i < config.k; ++i) {
    jobs.push_back(std::async(std::launch::async, train_member, i));
  }
  Ensemble ensemble;
  ensemble.config = config;
  for (auto& job : jobs) ensemble.members.push_back(job.get());
  return ensemble;
}

std::vector<std::vector<Label>> load_external_predictions(
    std::span<const std::filesystem::path> paths, std::size_t n_rows) {
  std::vector<std::vector<Label>> matrix;
  matrix.reserve(paths.size());
  for (const auto& path : paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    std::vector<Label> column;
    column.reserve(n_rows);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const auto label = parse_label_alias(line);
      if (!label) {
        throw Error(ErrorCode::UnknownLabel,
                    path.string() + ": '" + std::string(trim_ascii(line)) + "'", line_no);
      }
      column.push_back(*label);
    }
    if (column.size() != n_rows) {
      throw Error(ErrorCode::RowCountMismatch, path.string() + " has " +
                                                   std::to_string(column.size()) +
                                                   " rows, expected " + std::to_string(n_rows));
    }
    matrix.push_back(std::move(column));
  }
  return matrix;
}

std::vector<Label> vote_rows(const std::vector<std::vector<Label>>& matrix, TieBreak tie_break) {
  if (matrix.empty()) throw Error(ErrorCode::EmptyPredictions, "no prediction sets");
  const auto n = matrix.front().size();
  std::vector<Label> out;
  out.reserve(n);
  std::vector<Label> votes(matrix.size());
  for (std::size_t row = 0; row < n; ++row) {
    for (std::size_t k = 0; k < matrix.size(); ++k) {
      if (matrix[k].size() != n) {
        throw Error(ErrorCode::RowCountMismatch, "prediction sets differ in length");
      }
      votes[k] = matrix[k][row];
    }
    out.push_back(majority_vote(votes, tie_break));
  }
  return out;
}

}  // namespace hopeedi
