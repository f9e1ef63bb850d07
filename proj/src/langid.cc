#include "hopeedi/langid.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "hopeedi/error.h"
#include "hopeedi/translit.h"
#include "hopeedi/unicode.h"

namespace hopeedi {

namespace {

constexpr std::string_view kProfileMagic = "hopeedi-langprofile v1";

std::string escape_ngram(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

std::string unescape_ngram(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\' || i + 1 == s.size()) {
      out += s[i];
      continue;
    }
    switch (s[++i]) {
      case 't': out += '\t'; break;
      case 'n': out += '\n'; break;
      case 'r': out += '\r'; break;
      default: out += s[i];
    }
  }
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::vector<std::u32string> char_ngrams(std::u32string_view text, int n) {
  std::vector<std::u32string> grams;
  if (text.empty() || n < 1) return grams;
  std::u32string padded;
  if (n > 1) {
    padded.reserve(text.size() + 2);
    padded.push_back(U' ');
    padded.append(text);
    padded.push_back(U' ');
  } else {
    padded = text;
  }
  const auto order = static_cast<std::size_t>(n);
  if (padded.size() < order) {
    grams.push_back(padded);
    return grams;
  }
  grams.reserve(padded.size() - order + 1);
  for (std::size_t i = 0; i + order <= padded.size(); ++i) {
    grams.push_back(padded.substr(i, order));
  }
  return grams;
}

std::vector<std::u32string> text_ngrams(std::u32string_view text, int n) {
  std::vector<std::u32string> grams;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_white_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_white_space(text[j])) ++j;
    if (j > i) {
      auto word = char_ngrams(text.substr(i, j - i), n);
      grams.insert(grams.end(), std::make_move_iterator(word.begin()),
                   std::make_move_iterator(word.end()));
    }
    i = j;
  }
  return grams;
}

double LanguageProfile::logprob(const std::u32string& ngram) const {
  const auto it = logprobs_.find(utf8_encode(ngram));
  return it == logprobs_.end() ? unseen_logprob_ : it->second;
}

LanguageProfile train_profile(std::span<const std::string> corpus, std::string lang, int n,
                              double alpha) {
  if (n < 1 || n > 3) throw Error(ErrorCode::BadArgument, "n-gram order must be in 1..3");
  if (!(alpha > 0.0)) throw Error(ErrorCode::BadArgument, "smoothing alpha must be positive");

  // std::map keeps the serialized form independent of corpus order.
  std::map<std::string, std::size_t> counts;
  std::size_t total = 0;
  for (const auto& doc : corpus) {
    for (const auto& g : text_ngrams(utf8_decode(doc), n)) {
      ++counts[utf8_encode(g)];
      ++total;
    }
  }
  if (total == 0) throw Error(ErrorCode::EmptyCorpus, "no n-grams in corpus for '" + lang + "'");

  LanguageProfile profile;
  profile.lang_ = std::move(lang);
  profile.order_ = n;
  profile.alpha_ = alpha;
  profile.total_ = total;
  const double denom = static_cast<double>(total) + alpha * static_cast<double>(counts.size());
  for (const auto& [gram, count] : counts) {
    profile.logprobs_.emplace(gram, std::log((static_cast<double>(count) + alpha) / denom));
  }
  profile.unseen_logprob_ = std::log(alpha / denom);
  return profile;
}

std::string LanguageProfile::serialize() const {
  std::ostringstream out;
  out << kProfileMagic << '\n'
      << "lang\t" << lang_ << '\n'
      << "n\t" << order_ << '\n'
      << "alpha\t" << format_double(alpha_) << '\n'
      << "count\t" << logprobs_.size() << '\n'
      << "total\t" << total_ << '\n'
      << "unseen\t" << format_double(unseen_logprob_) << '\n';
  for (const auto& [gram, lp] : logprobs_) {
    out << escape_ngram(gram) << '\t' << format_double(lp) << '\n';
  }
  return out.str();
}

LanguageProfile LanguageProfile::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() {
    if (!std::getline(in, line)) throw Error(ErrorCode::BadFormat, "profile truncated", line_no);
    ++line_no;
    return std::string_view(line);
  };
  auto field = [&](std::string_view key) {
    const auto l = next_line();
    if (l.substr(0, key.size()) != key || l.size() <= key.size() || l[key.size()] != '\t') {
      throw Error(ErrorCode::BadFormat, "profile: expected '" + std::string(key) + "'", line_no);
    }
    return std::string(l.substr(key.size() + 1));
  };

  if (next_line() != kProfileMagic) throw Error(ErrorCode::BadFormat, "profile: bad header", 1);
  LanguageProfile p;
  try {
    p.lang_ = field("lang");
    p.order_ = std::stoi(field("n"));
    p.alpha_ = std::stod(field("alpha"));
    const auto count = std::stoull(field("count"));
    p.total_ = std::stoull(field("total"));
    p.unseen_logprob_ = std::stod(field("unseen"));
    for (std::size_t i = 0; i < count; ++i) {
      const auto l = next_line();
      const auto tab = l.rfind('\t');
      if (tab == std::string_view::npos) {
        throw Error(ErrorCode::BadFormat, "profile: expected 'ngram<TAB>logprob'", line_no);
      }
      p.logprobs_.emplace(unescape_ngram(l.substr(0, tab)), std::stod(std::string(l.substr(tab + 1))));
    }
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::BadFormat, "profile: bad number", line_no);
  }
  if (p.order_ < 1 || p.order_ > 3) throw Error(ErrorCode::BadFormat, "profile: bad order");
  return p;
}

LanguageProfile LanguageProfile::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void LanguageProfile::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << serialize();
}

DetectionResult detect(std::string_view text, std::span<const LanguageProfile> profiles,
                       double script_threshold) {
  if (profiles.empty()) throw Error(ErrorCode::NoProfiles, "no language profiles loaded");
  const auto decoded = utf8_decode(text);

  std::size_t letters = 0;
  std::size_t tamil = 0, malayalam = 0, devanagari = 0;
  bool any_content = false;
  for (CodePoint cp : decoded) {
    if (!is_white_space(cp)) any_content = true;
    if (!is_letter(cp) && !is_mark(cp)) continue;
    ++letters;
    switch (script_of(cp)) {
      case Script::Tamil: ++tamil; break;
      case Script::Malayalam: ++malayalam; break;
      case Script::Devanagari: ++devanagari; break;
      default: break;
    }
  }
  if (!any_content) throw Error(ErrorCode::EmptyText, "nothing to detect");

  DetectionResult result;
  // Scores are summed over distinct grams in a fixed order, weighted by
  // count, so repeating a text scales every term exactly and leaves the mean
  // unchanged.
  std::unordered_map<int, std::map<std::u32string, std::size_t>> grams_by_order;
  for (const auto& profile : profiles) {
    auto& grams = grams_by_order[profile.order()];
    if (grams.empty()) {
      for (auto& g : text_ngrams(decoded, profile.order())) ++grams[std::move(g)];
    }
    double sum = 0.0;
    std::size_t total = 0;
    for (const auto& [g, count] : grams) {
      sum += static_cast<double>(count) * profile.logprob(g);
      total += count;
    }
    result.scores[profile.lang()] = sum / static_cast<double>(total);
  }

  // scores is ordered by code, so a strict comparison keeps the smallest code
  // among ties.
  auto best = result.scores.begin();
  for (auto it = result.scores.begin(); it != result.scores.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  result.best = best->first;

  if (letters > 0) {
    const auto share = [&](std::size_t n) {
      return static_cast<double>(n) / static_cast<double>(letters);
    };
    // Candidates in code order; a tie goes to the smaller code.
    const std::pair<std::string_view, std::size_t> blocks[] = {
        {kHindi, devanagari}, {kMalayalam, malayalam}, {kTamil, tamil}};
    std::string_view script_lang;
    std::size_t top = 0;
    for (const auto& [lang, n] : blocks) {
      if (n > top) {
        top = n;
        script_lang = lang;
      }
    }
    if (top > 0 && share(top) >= script_threshold) {
      result.best = std::string(script_lang);
      result.by_script = true;
    }
  }
  return result;
}

LanguageClass assign_language_class(std::string_view detected, DatasetLang dataset_lang) {
  switch (dataset_lang) {
    case DatasetLang::English:
      return detected == kEnglish ? LanguageClass::InLanguage : LanguageClass::NotLanguage;
    case DatasetLang::Tamil:
    case DatasetLang::Malayalam:
      return detected == kEnglish || detected == kHindi ? LanguageClass::NotLanguage
                                                        : LanguageClass::InLanguage;
  }
  return LanguageClass::InLanguage;
}

}  // namespace hopeedi
