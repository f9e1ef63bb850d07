#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hopeedi/labels.h"

namespace hopeedi {

// Rows are gold classes, columns are predicted classes.
class ConfusionMatrix {
 public:
  ConfusionMatrix() = default;
  explicit ConfusionMatrix(std::vector<std::string> classes);

  // Throws BadArgument unless counts is |classes| x |classes|.
  static ConfusionMatrix from_counts(std::vector<std::string> classes,
                                     std::vector<std::vector<std::uint64_t>> counts);

  const std::vector<std::string>& classes() const { return classes_; }
  std::uint64_t at(std::size_t gold, std::size_t pred) const { return counts_[gold][pred]; }
  void add(std::size_t gold, std::size_t pred, std::uint64_t n = 1) { counts_[gold][pred] += n; }

  // Index of `label` in classes(), or -1.
  std::ptrdiff_t index_of(std::string_view label) const;

  std::uint64_t total() const;
  std::uint64_t gold_count(std::size_t c) const;       // row sum = support
  std::uint64_t predicted_count(std::size_t c) const;  // column sum

 private:
  std::vector<std::string> classes_;
  std::vector<std::vector<std::uint64_t>> counts_;
};

// Throws LengthMismatch for differing or empty inputs and UnknownLabel for a
// label outside `classes`.
ConfusionMatrix confusion(std::span<const std::string> gold, std::span<const std::string> pred,
                          std::span<const std::string> classes);
// Over the three task labels in canonical order.
ConfusionMatrix confusion(std::span<const Label> gold, std::span<const Label> pred);

struct ClassScores {
  std::string label;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::uint64_t support = 0;
};

// 0/0 is taken as 0 for precision, recall and F1. Throws UnknownLabel.
ClassScores class_prf(const ConfusionMatrix& cm, std::string_view label);

struct Averages {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct EvalReport {
  std::vector<ClassScores> per_class;
  Averages macro;
  Averages weighted;
};

struct AggregateOptions {
  // When false, classes without gold instances are left out of the macro
  // mean. They never carry weight in the weighted mean.
  bool macro_include_zero_support = true;
};

EvalReport aggregate(const ConfusionMatrix& cm, const AggregateOptions& options = {});

enum class ReportFormat { Text, Tsv, Json };

// Metrics are rounded to three decimals.
std::string render_report(const EvalReport& report, ReportFormat format);

}  // namespace hopeedi
