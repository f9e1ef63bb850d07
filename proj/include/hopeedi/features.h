#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hopeedi {

inline constexpr std::size_t kEmbeddingDim = 768;
inline constexpr std::size_t kTokenLimit = 512;

// A sparse (index -> weight) or dense feature vector of fixed dimension.
// Sparse entries are kept sorted by index with no duplicates.
class FeatureVector {
 public:
  enum class Kind { Sparse, Dense };
  using Entry = std::pair<std::uint32_t, double>;

  FeatureVector() = default;

  // Entries need not be sorted; duplicate or out-of-range indices throw
  // BadArgument.
  static FeatureVector sparse(std::size_t dim, std::vector<Entry> entries);
  static FeatureVector dense(std::vector<double> values);
  static FeatureVector zeros(std::size_t dim) { return sparse(dim, {}); }

  Kind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  const std::vector<Entry>& sparse_entries() const { return sparse_; }
  const std::vector<double>& dense_values() const { return dense_; }

  double at(std::size_t index) const;
  double dot(std::span<const double> weights) const;
  // acc += scale * x
  void add_scaled_to(std::span<double> acc, double scale) const;
  double norm() const;

  template <typename Fn>
  void for_each_nonzero(Fn&& fn) const {
    if (kind_ == Kind::Sparse) {
      for (const auto& [i, v] : sparse_) fn(static_cast<std::size_t>(i), v);
    } else {
      for (std::size_t i = 0; i < dense_.size(); ++i) {
        if (dense_[i] != 0.0) fn(i, dense_[i]);
      }
    }
  }

 private:
  Kind kind_ = Kind::Sparse;
  std::size_t dim_ = 0;
  std::vector<Entry> sparse_;
  std::vector<double> dense_;
};

// Term index built from whitespace-tokenized documents. Indices are dense and
// follow lexicographic (byte) order of the terms.
class Vocabulary {
 public:
  const std::vector<std::string>& terms() const { return terms_; }
  const std::vector<std::size_t>& doc_freq() const { return doc_freq_; }
  std::size_t size() const { return terms_.size(); }
  std::size_t num_docs() const { return num_docs_; }
  std::size_t min_df() const { return min_df_; }

  // Index of `term`, or -1 when out of vocabulary.
  std::ptrdiff_t index_of(std::string_view term) const;

  std::string serialize() const;
  static Vocabulary parse(std::string_view text);

  friend Vocabulary build_vocab(std::span<const std::string> docs, std::size_t min_df);

 private:
  void reindex();

  std::vector<std::string> terms_;
  std::vector<std::size_t> doc_freq_;
  std::size_t num_docs_ = 0;
  std::size_t min_df_ = 1;
  std::unordered_map<std::string, std::size_t> index_;
};

// Drops terms seen in fewer than `min_df` documents. Throws EmptyCorpus for
// no documents, EmptyVocabulary when nothing survives.
Vocabulary build_vocab(std::span<const std::string> docs, std::size_t min_df = 1);

// tf(t, doc) * ln((1 + N) / (1 + df(t))), L2-normalized when non-zero.
// Out-of-vocabulary tokens are ignored.
FeatureVector tfidf_vectorize(std::string_view doc, const Vocabulary& vocab);

// One dense vector per non-comment line, values separated by spaces; lines
// starting with '#' are headers (producer model, layer). Throws
// DimensionMismatch or NonNumericValue with the offending line number.
std::vector<FeatureVector> load_embeddings(const std::filesystem::path& path,
                                           std::size_t expected_dim = kEmbeddingDim);
std::vector<FeatureVector> parse_embeddings(std::string_view text,
                                            std::size_t expected_dim = kEmbeddingDim);

// Throws RowCountMismatch when an embedding file does not line up with its
// dataset.
void check_row_count(std::span<const FeatureVector> vectors, std::size_t expected_rows);

void write_embeddings(const std::filesystem::path& path, std::span<const FeatureVector> vectors,
                      std::string_view header = {});

// True iff the whitespace token count is within `limit`.
bool validate_token_budget(std::string_view text, std::size_t limit = kTokenLimit);

}  // namespace hopeedi
