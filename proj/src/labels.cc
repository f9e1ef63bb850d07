#include "hopeedi/labels.h"

#include <algorithm>
#include <cctype>
#include <string>

#include "hopeedi/unicode.h"

namespace hopeedi {

namespace {

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::string_view label_name(Label label) {
  switch (label) {
    case Label::Hope: return "Hope";
    case Label::NotHope: return "NotHope";
    case Label::NotLanguage: return "NotLanguage";
  }
  return "?";
}

std::optional<Label> label_from_name(std::string_view name) {
  for (Label l : kAllLabels) {
    if (label_name(l) == name) return l;
  }
  return std::nullopt;
}

std::optional<Label> parse_label_alias(std::string_view raw) {
  const std::string key = ascii_lower(trim_ascii(raw));
  if (key == "hope_speech") return Label::Hope;
  if (key == "non_hope_speech") return Label::NotHope;
  if (key == "not-english" || key == "not-tamil" || key == "not-malayalam" ||
      key == "not-in-intended-language") {
    return Label::NotLanguage;
  }
  return std::nullopt;
}

std::string_view dataset_label_string(Label label, DatasetLang lang) {
  switch (label) {
    case Label::Hope: return "Hope_speech";
    case Label::NotHope: return "Non_hope_speech";
    case Label::NotLanguage:
      switch (lang) {
        case DatasetLang::English: return "not-English";
        case DatasetLang::Tamil: return "not-Tamil";
        case DatasetLang::Malayalam: return "not-malayalam";
      }
  }
  return "?";
}

std::string_view lang_code(DatasetLang lang) {
  switch (lang) {
    case DatasetLang::English: return "en";
    case DatasetLang::Tamil: return "ta";
    case DatasetLang::Malayalam: return "ml";
  }
  return "?";
}

std::optional<DatasetLang> lang_from_code(std::string_view code) {
  const std::string key = ascii_lower(code);
  if (key == "en" || key == "english") return DatasetLang::English;
  if (key == "ta" || key == "tamil") return DatasetLang::Tamil;
  if (key == "ml" || key == "malayalam") return DatasetLang::Malayalam;
  return std::nullopt;
}

}  // namespace hopeedi
