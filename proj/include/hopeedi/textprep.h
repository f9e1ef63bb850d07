#pragma once

#include <string>
#include <string_view>

#include "hopeedi/unicode.h"

namespace hopeedi {

// Each step can be switched off for ablations; the default applies all four.
struct NormalizationConfig {
  bool strip_specials = true;
  bool strip_emoji = true;
  bool lowercase = true;
  bool collapse_whitespace = true;
};

// Emoticons, Misc Symbols & Pictographs, Transport & Map, Supplemental
// Symbols & Pictographs, Dingbats, variation selectors and ZWJ.
bool is_emoji(CodePoint cp);

// Code points kept by the special-character filter: letters and marks of any
// script, decimal digits, white space, and everything inside the Tamil,
// Malayalam and Devanagari blocks.
bool is_kept_character(CodePoint cp);

// Applies, in order: special-character removal, emoji removal, simple
// lowercasing, white-space collapsing with trimming.
std::string normalize_text(std::string_view raw, const NormalizationConfig& cfg = {});

}  // namespace hopeedi
