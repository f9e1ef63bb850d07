#include "hopeedi/corpus.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "hopeedi/error.h"
#include "hopeedi/rng.h"
#include "hopeedi/unicode.h"

namespace hopeedi {

namespace {

constexpr std::string_view kSplitMagic = "hopeedi-split v1";

void strip_line_ending(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

void strip_bom(std::string& line) {
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
}

std::string_view partition_name(Partition p) {
  return p == Partition::Train ? "train" : "validation";
}

}  // namespace

std::optional<double> DatasetStats::hope_to_nothope_ratio() const {
  const auto not_hope = count(Label::NotHope);
  if (not_hope == 0) return std::nullopt;
  return static_cast<double>(count(Label::Hope)) / static_cast<double>(not_hope);
}

Corpus parse_tsv(std::istream& in, DatasetLang lang, bool labeled) {
  Corpus rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_line_ending(line);
    if (line_no == 1) strip_bom(line);
    if (line.empty()) continue;

    const auto tabs = std::count(line.begin(), line.end(), '\t');
    const long expected_tabs = labeled ? 1 : 0;
    if (tabs != expected_tabs) {
      throw Error(ErrorCode::MalformedRow,
                  "expected " + std::to_string(expected_tabs + 1) + " field(s), found " +
                      std::to_string(tabs + 1),
                  line_no);
    }

    LabeledComment row;
    row.id = rows.size();
    row.dataset_lang = lang;
    std::string_view text = line;
    if (labeled) {
      const auto tab = line.find('\t');
      text = std::string_view(line).substr(0, tab);
      const auto raw_label = std::string_view(line).substr(tab + 1);
      row.label = parse_label_alias(raw_label);
      if (!row.label) {
        throw Error(ErrorCode::UnknownLabel, "'" + std::string(trim_ascii(raw_label)) + "'",
                    line_no);
      }
    }
    if (trim_ascii(text).empty()) {
      throw Error(ErrorCode::MalformedRow, "empty comment text", line_no);
    }
    row.text = std::string(text);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorCode::EmptyFile, "no data lines");
  return rows;
}

Corpus load_tsv(const std::filesystem::path& path, DatasetLang lang, bool labeled) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  try {
    return parse_tsv(in, lang, labeled);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.detail(), e.line());
  }
}

bool tsv_looks_labeled(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::string line;
  bool any = false;
  while (std::getline(in, line)) {
    strip_line_ending(line);
    if (line.empty()) continue;
    any = true;
    if (std::count(line.begin(), line.end(), '\t') != 1) return false;
  }
  return any;
}

DatasetStats compute_stats(const Corpus& data) {
  DatasetStats stats;
  for (const auto& row : data) {
    if (!row.label) {
      throw Error(ErrorCode::UnlabeledInput, "row " + std::to_string(row.id) + " has no label");
    }
    ++stats.counts[static_cast<std::size_t>(*row.label)];
  }
  stats.total = data.size();
  return stats;
}

SplitPlan make_split(std::size_t n_rows, std::uint64_t seed, double fraction_train) {
  if (!(fraction_train > 0.0 && fraction_train < 1.0)) {
    throw Error(ErrorCode::BadFraction,
                "fraction_train must be in (0,1), got " + std::to_string(fraction_train));
  }
  if (n_rows < 2) {
    throw Error(ErrorCode::TooFewRows, "need at least 2 rows, got " + std::to_string(n_rows));
  }

  std::vector<std::size_t> order(n_rows);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  rng.shuffle(order.begin(), order.end());

  // ceil(fraction * n), clamped so that both partitions are non-empty.
  auto n_train = static_cast<std::size_t>(
      std::ceil(fraction_train * static_cast<double>(n_rows) - 1e-9));
  n_train = std::clamp<std::size_t>(n_train, 1, n_rows - 1);

  SplitPlan plan;
  plan.seed = seed;
  plan.fraction_train = fraction_train;
  plan.assignments.assign(n_rows, Partition::Validation);
  for (std::size_t i = 0; i < n_train; ++i) plan.assignments[order[i]] = Partition::Train;
  return plan;
}

SplitPlan make_split(const Corpus& data, std::uint64_t seed, double fraction_train) {
  return make_split(data.size(), seed, fraction_train);
}

std::vector<std::size_t> SplitPlan::train_ids() const {
  std::vector<std::size_t> ids;
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    if (assignments[i] == Partition::Train) ids.push_back(i);
  }
  return ids;
}

std::vector<std::size_t> SplitPlan::validation_ids() const {
  std::vector<std::size_t> ids;
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    if (assignments[i] == Partition::Validation) ids.push_back(i);
  }
  return ids;
}

std::string SplitPlan::serialize() const {
  std::ostringstream out;
  char fraction[32];
  std::snprintf(fraction, sizeof fraction, "%.17g", fraction_train);
  out << kSplitMagic << '\n'
      << "rng\t" << Rng::kName << '\n'
      << "seed\t" << seed << '\n'
      << "fraction_train\t" << fraction << '\n'
      << "rows\t" << assignments.size() << '\n';
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    out << i << '\t' << partition_name(assignments[i]) << '\n';
  }
  return out.str();
}

SplitPlan SplitPlan::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  auto expect_field = [&](std::string_view key) {
    if (!std::getline(in, line) || line.rfind(std::string(key) + "\t", 0) != 0) {
      throw Error(ErrorCode::BadFormat, "split plan: expected '" + std::string(key) + "'");
    }
    return line.substr(key.size() + 1);
  };
  if (!std::getline(in, line) || line != kSplitMagic) {
    throw Error(ErrorCode::BadFormat, "split plan: bad header");
  }
  if (expect_field("rng") != Rng::kName) {
    throw Error(ErrorCode::BadFormat, "split plan: unsupported generator");
  }
  SplitPlan plan;
  plan.seed = std::stoull(expect_field("seed"));
  plan.fraction_train = std::stod(expect_field("fraction_train"));
  const auto rows = std::stoull(expect_field("rows"));
  plan.assignments.reserve(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!std::getline(in, line)) throw Error(ErrorCode::BadFormat, "split plan: truncated");
    const auto tab = line.find('\t');
    if (tab == std::string::npos || std::stoull(line.substr(0, tab)) != i) {
      throw Error(ErrorCode::BadFormat, "split plan: bad row " + std::to_string(i));
    }
    const auto part = line.substr(tab + 1);
    if (part == "train") {
      plan.assignments.push_back(Partition::Train);
    } else if (part == "validation") {
      plan.assignments.push_back(Partition::Validation);
    } else {
      throw Error(ErrorCode::BadFormat, "split plan: bad partition '" + part + "'");
    }
  }
  return plan;
}

}  // namespace hopeedi
