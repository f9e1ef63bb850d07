#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hopeedi/labels.h"

namespace hopeedi {

// One dataset row. `label` is empty for unlabeled (test) data.
struct LabeledComment {
  std::size_t id = 0;
  std::string text;
  std::optional<Label> label;
  DatasetLang dataset_lang = DatasetLang::English;
};

using Corpus = std::vector<LabeledComment>;

struct DatasetStats {
  std::array<std::size_t, 3> counts{};  // indexed by Label
  std::size_t total = 0;

  std::size_t count(Label label) const { return counts[static_cast<std::size_t>(label)]; }

  // counts[Hope] / counts[NotHope]; empty when there are no NotHope rows.
  std::optional<double> hope_to_nothope_ratio() const;
};

enum class Partition { Train, Validation };

// Seeded train/validation assignment for `size` rows, indexed by row id.
struct SplitPlan {
  std::uint64_t seed = 0;
  double fraction_train = 0.9;
  std::vector<Partition> assignments;

  std::vector<std::size_t> train_ids() const;
  std::vector<std::size_t> validation_ids() const;

  // Versioned text form: a header recording seed, fraction and generator,
  // then one "id<TAB>partition" line per row.
  std::string serialize() const;
  static SplitPlan parse(const std::string& text);
};

inline constexpr double kDefaultFractionTrain = 0.9;

// Reads a HopeEDI TSV file. Labeled mode expects "text<TAB>label" per line,
// unlabeled mode expects text only. A row whose text is empty after trimming
// is a MalformedRow; ids are 0-based line indices.
Corpus load_tsv(const std::filesystem::path& path, DatasetLang lang, bool labeled);
Corpus parse_tsv(std::istream& in, DatasetLang lang, bool labeled);

// True when every non-blank line of the file has exactly one tab.
bool tsv_looks_labeled(const std::filesystem::path& path);

DatasetStats compute_stats(const Corpus& data);

SplitPlan make_split(std::size_t n_rows, std::uint64_t seed, double fraction_train);
SplitPlan make_split(const Corpus& data, std::uint64_t seed, double fraction_train);

}  // namespace hopeedi
