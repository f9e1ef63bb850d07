#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hopeedi/corpus.h"
#include "hopeedi/features.h"
#include "hopeedi/labels.h"
#include "hopeedi/learn.h"

namespace hopeedi {

enum class TieBreak {
  // Earliest tied label in canonical order.
  ClassOrder,
  // NotHope wins any tie it is part of; other ties fall back to ClassOrder.
  MajorityClassPrior,
};

std::string_view tie_break_name(TieBreak t);  // "class-order", "prior"
std::optional<TieBreak> tie_break_from_name(std::string_view name);

// Mode of the votes. Throws EmptyPredictions for no votes.
Label majority_vote(std::span<const Label> predictions,
                    TieBreak tie_break = TieBreak::MajorityClassPrior);

struct TrainerConfig {
  ModelKind kind = ModelKind::LogReg;
  LogRegParams logreg;
  SvmParams svm;
  ForestParams forest;
};

TrainedModel train_model(std::span<const FeatureVector> x, std::span<const Label> y,
                         const TrainerConfig& trainer, std::uint64_t seed);

struct EnsembleConfig {
  std::size_t k = 7;
  std::uint64_t base_seed = 1;
  double fraction_train = kDefaultFractionTrain;
  TieBreak tie_break = TieBreak::MajorityClassPrior;

  // Throws BadArgument for k == 0; returns a warning for even k.
  std::optional<std::string> validate() const;
};

struct EnsembleMember {
  TrainedModel model;
  std::uint64_t split_seed = 0;
  std::size_t train_rows = 0;
  std::size_t validation_rows = 0;
  double validation_weighted_f1 = 0.0;
};

struct Ensemble {
  EnsembleConfig config;
  std::vector<EnsembleMember> members;

  Label predict(const FeatureVector& x) const;
  std::vector<Label> member_predictions(const FeatureVector& x) const;
};

// Member i is trained on the train partition of
// make_split(n, base_seed + i, fraction_train) with trainer seed
// base_seed + i, and scored on its validation partition. Members train
// concurrently; the result does not depend on scheduling.
Ensemble train_ensemble(std::span<const FeatureVector> x, std::span<const Label> y,
                        const EnsembleConfig& config, const TrainerConfig& trainer);

// Reads k prediction files (one label per line, corpus aliases) into a k x n
// label matrix. Throws RowCountMismatch or UnknownLabel.
std::vector<std::vector<Label>> load_external_predictions(
    std::span<const std::filesystem::path> paths, std::size_t n_rows);

// Column-wise majority vote over a k x n matrix.
std::vector<Label> vote_rows(const std::vector<std::vector<Label>>& matrix, TieBreak tie_break);

}  // namespace hopeedi
