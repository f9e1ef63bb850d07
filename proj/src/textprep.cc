#include "hopeedi/textprep.h"

#include "hopeedi/translit.h"

namespace hopeedi {

bool is_emoji(CodePoint cp) {
  return (cp >= 0x1F600 && cp <= 0x1F64F)     // Emoticons
         || (cp >= 0x1F300 && cp <= 0x1F5FF)  // Misc Symbols and Pictographs
         || (cp >= 0x1F680 && cp <= 0x1F6FF)  // Transport and Map
         || (cp >= 0x1F900 && cp <= 0x1F9FF)  // Supplemental Symbols and Pictographs
         || (cp >= 0x2700 && cp <= 0x27BF)    // Dingbats
         || (cp >= 0xFE00 && cp <= 0xFE0F)    // Variation Selectors
         || (cp >= 0xE0100 && cp <= 0xE01EF)  // Variation Selectors Supplement
         || cp == 0x200D;                     // ZWJ
}

bool is_kept_character(CodePoint cp) {
  switch (script_of(cp)) {
    case Script::Tamil:
    case Script::Malayalam:
    case Script::Devanagari:
      return true;
    default:
      break;
  }
  return is_letter(cp) || is_mark(cp) || is_decimal_digit(cp) || is_white_space(cp);
}

std::string normalize_text(std::string_view raw, const NormalizationConfig& cfg) {
  std::u32string text = utf8_decode(raw);

  if (cfg.strip_specials) std::erase_if(text, [](CodePoint cp) { return !is_kept_character(cp); });
  if (cfg.strip_emoji) std::erase_if(text, is_emoji);
  if (cfg.lowercase) {
    for (auto& cp : text) cp = simple_lower(cp);
  }
  if (cfg.collapse_whitespace) {
    std::u32string collapsed;
    collapsed.reserve(text.size());
    bool pending_space = false;
    for (CodePoint cp : text) {
      if (is_white_space(cp)) {
        pending_space = true;
        continue;
      }
      if (pending_space && !collapsed.empty()) collapsed.push_back(U' ');
      pending_space = false;
      collapsed.push_back(cp);
    }
    text = std::move(collapsed);
  }
  return utf8_encode(text);
}

}  // namespace hopeedi
