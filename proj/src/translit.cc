#include "hopeedi/translit.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "hopeedi/error.h"

namespace hopeedi {

namespace {

bool in_target_block(CodePoint cp, DatasetLang lang) {
  switch (lang) {
    case DatasetLang::Tamil: return script_of(cp) == Script::Tamil;
    case DatasetLang::Malayalam: return script_of(cp) == Script::Malayalam;
    case DatasetLang::English: return false;
  }
  return false;
}

}  // namespace

Script script_of(CodePoint cp) {
  if (cp >= 0x0B80 && cp <= 0x0BFF) return Script::Tamil;
  if (cp >= 0x0D00 && cp <= 0x0D7F) return Script::Malayalam;
  if (cp >= 0x0900 && cp <= 0x097F) return Script::Devanagari;
  if ((cp >= U'A' && cp <= U'Z') || (cp >= U'a' && cp <= U'z')) return Script::Latin;
  if (cp >= 0x00C0 && cp <= 0x024F && cp != 0x00D7 && cp != 0x00F7) return Script::Latin;
  if (cp >= 0x1E00 && cp <= 0x1EFF) return Script::Latin;
  return Script::Other;
}

SchemeTable::SchemeTable(DatasetLang lang, std::map<std::u32string, std::u32string> entries)
    : lang_(lang), entries_(std::move(entries)) {
  if (lang_ == DatasetLang::English) {
    throw Error(ErrorCode::BadArgument, "no transliteration scheme for English");
  }
  for (const auto& [key, value] : entries_) {
    if (key.empty()) throw Error(ErrorCode::BadArgument, "empty scheme key");
    for (CodePoint cp : key) {
      if (script_of(cp) != Script::Latin) {
        throw Error(ErrorCode::BadArgument, "scheme key '" + utf8_encode(key) + "' is not Latin");
      }
    }
    if (value.empty()) {
      throw Error(ErrorCode::BadArgument, "empty value for key '" + utf8_encode(key) + "'");
    }
    for (CodePoint cp : value) {
      if (!in_target_block(cp, lang_)) {
        throw Error(ErrorCode::BadArgument,
                    "value for '" + utf8_encode(key) + "' leaves the target script block");
      }
    }
    max_key_len_ = std::max(max_key_len_, key.size());
  }
}

SchemeTable SchemeTable::parse(std::string_view text, DatasetLang lang) {
  std::map<std::u32string, std::u32string> entries;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto trimmed = trim_ascii(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const auto tab = trimmed.find('\t');
    if (tab == std::string_view::npos || trimmed.find('\t', tab + 1) != std::string_view::npos) {
      throw Error(ErrorCode::MalformedRow, "scheme line needs 'latin<TAB>native'", line_no);
    }
    auto key = utf8_decode(trim_ascii(trimmed.substr(0, tab)));
    auto value = utf8_decode(trim_ascii(trimmed.substr(tab + 1)));
    if (entries.contains(key)) {
      throw Error(ErrorCode::MalformedRow, "duplicate key '" + utf8_encode(key) + "'", line_no);
    }
    entries.emplace(std::move(key), std::move(value));
  }
  try {
    return SchemeTable(lang, std::move(entries));
  } catch (const Error& e) {
    throw Error(ErrorCode::BadFormat, e.detail());
  }
}

SchemeTable SchemeTable::load(const std::filesystem::path& path, DatasetLang lang) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse(buf.str(), lang);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.detail(), e.line());
  }
}

std::size_t SchemeTable::longest_match(std::u32string_view text, std::size_t pos) const {
  const std::size_t limit = std::min(max_key_len_, text.size() - pos);
  for (std::size_t len = limit; len > 0; --len) {
    if (entries_.contains(std::u32string(text.substr(pos, len)))) return len;
  }
  return 0;
}

std::vector<TranslitSegment> segment_greedy(std::u32string_view text, const SchemeTable& table) {
  std::vector<TranslitSegment> segments;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t len =
        script_of(text[pos]) == Script::Latin ? table.longest_match(text, pos) : 0;
    if (len > 0) {
      segments.push_back(
          {pos, len, true, table.entries().at(std::u32string(text.substr(pos, len)))});
      pos += len;
      continue;
    }
    // Merge consecutive pass-through code points into one segment.
    if (segments.empty() || segments.back().matched) {
      segments.push_back({pos, 0, false, {}});
    }
    segments.back().length += 1;
    segments.back().output.push_back(text[pos]);
    ++pos;
  }
  return segments;
}

std::string transliterate(std::string_view text, const SchemeTable& table) {
  if (table.empty()) throw Error(ErrorCode::BadArgument, "empty scheme table");
  const auto decoded = utf8_decode(text);
  std::u32string out;
  out.reserve(decoded.size());
  for (const auto& seg : segment_greedy(decoded, table)) out += seg.output;
  return utf8_encode(out);
}

}  // namespace hopeedi
