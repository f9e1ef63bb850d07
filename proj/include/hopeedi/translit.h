#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hopeedi/labels.h"
#include "hopeedi/unicode.h"

namespace hopeedi {

enum class Script { Latin, Tamil, Malayalam, Devanagari, Other };

// Block-range classification. Latin means a Latin letter; digits, spaces and
// punctuation are Other.
Script script_of(CodePoint cp);

// Romanization table for one language: Latin key sequence -> native text.
class SchemeTable {
 public:
  SchemeTable() = default;

  // Throws BadArgument for an empty key, a key with non-Latin characters, or
  // a value outside the target script block.
  SchemeTable(DatasetLang lang, std::map<std::u32string, std::u32string> entries);

  // UTF-8 TSV, "latin<TAB>native" per line; '#' starts a comment line.
  static SchemeTable load(const std::filesystem::path& path, DatasetLang lang);
  static SchemeTable parse(std::string_view text, DatasetLang lang);

  DatasetLang lang() const { return lang_; }
  const std::map<std::u32string, std::u32string>& entries() const { return entries_; }
  std::size_t max_key_len() const { return max_key_len_; }
  bool empty() const { return entries_.empty(); }

  // Longest key that is a prefix of text[pos..]; 0 when none matches.
  std::size_t longest_match(std::u32string_view text, std::size_t pos) const;

 private:
  DatasetLang lang_ = DatasetLang::Tamil;
  std::map<std::u32string, std::u32string> entries_;
  std::size_t max_key_len_ = 0;
};

// One step of the greedy matcher: `length` input code points starting at
// `start`, replaced by `output`. `matched` is false for pass-through text.
struct TranslitSegment {
  std::size_t start = 0;
  std::size_t length = 0;
  bool matched = false;
  std::u32string output;
};

std::vector<TranslitSegment> segment_greedy(std::u32string_view text, const SchemeTable& table);

// Left-to-right greedy longest-match over the Latin runs of `text`. Anything
// that is not matched, including non-Latin text, passes through unchanged.
std::string transliterate(std::string_view text, const SchemeTable& table);

}  // namespace hopeedi
