#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hopeedi/labels.h"

namespace hopeedi {

// Language codes the detector knows about.
inline constexpr std::string_view kEnglish = "en";
inline constexpr std::string_view kHindi = "hi";
inline constexpr std::string_view kTamil = "ta";
inline constexpr std::string_view kMalayalam = "ml";

inline constexpr int kDefaultNgramOrder = 3;
inline constexpr double kDefaultSmoothingAlpha = 0.5;
inline constexpr double kDefaultScriptThreshold = 0.5;

// Character n-grams of one word. For n > 1 the word is padded with a single
// space on each side, so word boundaries are part of the model.
std::vector<std::u32string> char_ngrams(std::u32string_view text, int n);

// char_ngrams of every white-space separated word of `text`. Grams never
// span two words, so a text joined with itself has exactly twice the grams.
std::vector<std::u32string> text_ngrams(std::u32string_view text, int n);

// Add-alpha smoothed character n-gram model of one language:
//   P(g) = (count(g) + alpha) / (total + alpha * V)
// over the V distinct n-grams seen in training. An unseen n-gram scores
// log(alpha / (total + alpha * V)).
class LanguageProfile {
 public:
  const std::string& lang() const { return lang_; }
  int order() const { return order_; }
  double alpha() const { return alpha_; }
  std::size_t total() const { return total_; }
  double unseen_logprob() const { return unseen_logprob_; }
  const std::map<std::string, double>& logprobs() const { return logprobs_; }

  double logprob(const std::u32string& ngram) const;

  std::string serialize() const;
  static LanguageProfile parse(std::string_view text);
  static LanguageProfile load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

  friend LanguageProfile train_profile(std::span<const std::string> corpus, std::string lang,
                                       int n, double alpha);

 private:
  std::string lang_;
  int order_ = kDefaultNgramOrder;
  double alpha_ = kDefaultSmoothingAlpha;
  std::size_t total_ = 0;
  double unseen_logprob_ = 0.0;
  std::map<std::string, double> logprobs_;  // UTF-8 n-gram -> log P
};

// Texts are used as given; callers normalize first. Throws EmptyCorpus when
// the corpus yields no n-grams, BadArgument for n outside 1..3 or alpha <= 0.
LanguageProfile train_profile(std::span<const std::string> corpus, std::string lang,
                              int n = kDefaultNgramOrder, double alpha = kDefaultSmoothingAlpha);

struct DetectionResult {
  std::string best;
  // Mean n-gram log-probability per profile language.
  std::map<std::string, double> scores;
  // True when the native-script rule decided `best`; otherwise best is the
  // argmax of scores with ties going to the smaller language code.
  bool by_script = false;
};

// If at least `script_threshold` of the letters of `text` are in the Tamil,
// Malayalam or Devanagari block, that language (ta/ml/hi) wins outright.
// Otherwise the best-scoring profile wins.
DetectionResult detect(std::string_view text, std::span<const LanguageProfile> profiles,
                       double script_threshold = kDefaultScriptThreshold);

enum class LanguageClass { InLanguage, NotLanguage };

// Tamil and Malayalam: NotLanguage iff the detected language is English or
// Hindi. English: NotLanguage iff the detected language is not English.
LanguageClass assign_language_class(std::string_view detected, DatasetLang dataset_lang);

}  // namespace hopeedi
