#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace hopeedi {

// Task labels in canonical order. The enumerator order is the class order
// used for every deterministic tie-break.
enum class Label { Hope = 0, NotHope = 1, NotLanguage = 2 };

inline constexpr std::array<Label, 3> kAllLabels = {Label::Hope, Label::NotHope,
                                                    Label::NotLanguage};

enum class DatasetLang { English, Tamil, Malayalam };

// Short name used in logs, model files and reports: "Hope", "NotHope",
// "NotLanguage".
std::string_view label_name(Label label);

// Inverse of label_name; empty for anything else.
std::optional<Label> label_from_name(std::string_view name);

// Maps a HopeEDI label string (trimmed, case-insensitive) through the closed
// alias table. Returns empty for unknown strings.
std::optional<Label> parse_label_alias(std::string_view raw);

// The label string written to prediction files for a dataset, e.g.
// "Hope_speech", "Non_hope_speech", "not-Tamil".
std::string_view dataset_label_string(Label label, DatasetLang lang);

std::string_view lang_code(DatasetLang lang);  // "en", "ta", "ml"
std::optional<DatasetLang> lang_from_code(std::string_view code);

}  // namespace hopeedi
