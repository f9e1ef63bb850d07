#include "hopeedi/features.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "hopeedi/error.h"
#include "hopeedi/unicode.h"

namespace hopeedi {

namespace {

constexpr std::string_view kVocabMagic = "hopeedi-vocab v1";

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

FeatureVector FeatureVector::sparse(std::size_t dim, std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].first >= dim) {
      throw Error(ErrorCode::BadArgument, "sparse index " + std::to_string(entries[i].first) +
                                              " >= dim " + std::to_string(dim));
    }
    if (i > 0 && entries[i].first == entries[i - 1].first) {
      throw Error(ErrorCode::BadArgument, "duplicate sparse index");
    }
  }
  FeatureVector v;
  v.kind_ = Kind::Sparse;
  v.dim_ = dim;
  v.sparse_ = std::move(entries);
  return v;
}

FeatureVector FeatureVector::dense(std::vector<double> values) {
  FeatureVector v;
  v.kind_ = Kind::Dense;
  v.dim_ = values.size();
  v.dense_ = std::move(values);
  return v;
}

double FeatureVector::at(std::size_t index) const {
  if (kind_ == Kind::Dense) return dense_[index];
  const auto it = std::lower_bound(sparse_.begin(), sparse_.end(), index,
                                   [](const Entry& e, std::size_t i) { return e.first < i; });
  return it != sparse_.end() && it->first == index ? it->second : 0.0;
}

double FeatureVector::dot(std::span<const double> weights) const {
  double sum = 0.0;
  if (kind_ == Kind::Dense) {
    for (std::size_t i = 0; i < dense_.size(); ++i) sum += dense_[i] * weights[i];
  } else {
    for (const auto& [i, v] : sparse_) sum += v * weights[i];
  }
  return sum;
}

void FeatureVector::add_scaled_to(std::span<double> acc, double scale) const {
  if (kind_ == Kind::Dense) {
    for (std::size_t i = 0; i < dense_.size(); ++i) acc[i] += scale * dense_[i];
  } else {
    for (const auto& [i, v] : sparse_) acc[i] += scale * v;
  }
}

double FeatureVector::norm() const {
  double sq = 0.0;
  for_each_nonzero([&](std::size_t, double v) { sq += v * v; });
  return std::sqrt(sq);
}

std::ptrdiff_t Vocabulary::index_of(std::string_view term) const {
  const auto it = index_.find(std::string(term));
  return it == index_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

void Vocabulary::reindex() {
  index_.clear();
  index_.reserve(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) index_.emplace(terms_[i], i);
}

Vocabulary build_vocab(std::span<const std::string> docs, std::size_t min_df) {
  if (docs.empty()) throw Error(ErrorCode::EmptyCorpus, "no documents");
  if (min_df < 1) throw Error(ErrorCode::BadArgument, "min_df must be >= 1");

  std::map<std::string, std::size_t> df;
  for (const auto& doc : docs) {
    std::set<std::string_view> seen;
    for (auto tok : split_whitespace(doc)) seen.insert(tok);
    for (auto tok : seen) ++df[std::string(tok)];
  }

  Vocabulary vocab;
  vocab.num_docs_ = docs.size();
  vocab.min_df_ = min_df;
  for (auto& [term, count] : df) {
    if (count < min_df) continue;
    vocab.terms_.push_back(term);
    vocab.doc_freq_.push_back(count);
  }
  if (vocab.terms_.empty()) {
    throw Error(ErrorCode::EmptyVocabulary, "no term reaches min_df " + std::to_string(min_df));
  }
  vocab.reindex();
  return vocab;
}

std::string Vocabulary::serialize() const {
  std::ostringstream out;
  out << kVocabMagic << '\n'
      << "num_docs\t" << num_docs_ << '\n'
      << "min_df\t" << min_df_ << '\n'
      << "terms\t" << terms_.size() << '\n';
  for (std::size_t i = 0; i < terms_.size(); ++i) out << terms_[i] << '\t' << doc_freq_[i] << '\n';
  return out.str();
}

Vocabulary Vocabulary::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  auto field = [&](const std::string& key) -> std::size_t {
    if (!std::getline(in, line) || line.rfind(key + "\t", 0) != 0) {
      throw Error(ErrorCode::BadFormat, "vocabulary: expected '" + key + "'");
    }
    return std::stoull(line.substr(key.size() + 1));
  };
  if (!std::getline(in, line) || line != kVocabMagic) {
    throw Error(ErrorCode::BadFormat, "vocabulary: bad header");
  }
  Vocabulary vocab;
  vocab.num_docs_ = field("num_docs");
  vocab.min_df_ = field("min_df");
  const auto n = field("terms");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw Error(ErrorCode::BadFormat, "vocabulary: truncated");
    const auto tab = line.rfind('\t');
    if (tab == std::string::npos) throw Error(ErrorCode::BadFormat, "vocabulary: bad row");
    vocab.terms_.push_back(line.substr(0, tab));
    vocab.doc_freq_.push_back(std::stoull(line.substr(tab + 1)));
  }
  if (!std::is_sorted(vocab.terms_.begin(), vocab.terms_.end())) {
    throw Error(ErrorCode::BadFormat, "vocabulary: terms out of order");
  }
  vocab.reindex();
  return vocab;
}

FeatureVector tfidf_vectorize(std::string_view doc, const Vocabulary& vocab) {
  std::map<std::uint32_t, std::size_t> tf;
  for (auto tok : split_whitespace(doc)) {
    const auto idx = vocab.index_of(tok);
    if (idx >= 0) ++tf[static_cast<std::uint32_t>(idx)];
  }

  const auto n = static_cast<double>(vocab.num_docs());
  std::vector<FeatureVector::Entry> entries;
  double sq = 0.0;
  for (const auto& [idx, count] : tf) {
    const auto df = static_cast<double>(vocab.doc_freq()[idx]);
    const double w = static_cast<double>(count) * std::log((1.0 + n) / (1.0 + df));
    if (w == 0.0) continue;
    entries.emplace_back(idx, w);
    sq += w * w;
  }
  if (sq > 0.0) {
    const double inv = 1.0 / std::sqrt(sq);
    for (auto& e : entries) e.second *= inv;
  }
  return FeatureVector::sparse(vocab.size(), std::move(entries));
}

std::vector<FeatureVector> parse_embeddings(std::string_view text, std::size_t expected_dim) {
  std::vector<FeatureVector> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty() && line.front() == '#') continue;

    std::vector<double> values;
    values.reserve(expected_dim);
    for (auto tok : split_whitespace(line)) {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
        throw Error(ErrorCode::NonNumericValue, "'" + std::string(tok) + "'", line_no);
      }
      values.push_back(v);
    }
    if (values.size() != expected_dim) {
      throw Error(ErrorCode::DimensionMismatch,
                  "expected " + std::to_string(expected_dim) + " values, found " +
                      std::to_string(values.size()),
                  line_no);
    }
    out.push_back(FeatureVector::dense(std::move(values)));
  }
  return out;
}

std::vector<FeatureVector> load_embeddings(const std::filesystem::path& path,
                                           std::size_t expected_dim) {
  const auto text = read_file(path);
  try {
    return parse_embeddings(text, expected_dim);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.detail(), e.line());
  }
}

void check_row_count(std::span<const FeatureVector> vectors, std::size_t expected_rows) {
  if (vectors.size() != expected_rows) {
    throw Error(ErrorCode::RowCountMismatch, "embeddings have " + std::to_string(vectors.size()) +
                                                 " rows, dataset has " +
                                                 std::to_string(expected_rows));
  }
}

void write_embeddings(const std::filesystem::path& path, std::span<const FeatureVector> vectors,
                      std::string_view header) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  if (!header.empty()) out << "# " << header << '\n';
  char buf[40];
  for (const auto& v : vectors) {
    for (std::size_t i = 0; i < v.dim(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", v.at(i));
      if (i > 0) out << ' ';
      out << buf;
    }
    out << '\n';
  }
}

bool validate_token_budget(std::string_view text, std::size_t limit) {
  if (limit == 0) throw Error(ErrorCode::BadArgument, "token limit must be positive");
  return split_whitespace(text).size() <= limit;
}

}  // namespace hopeedi
