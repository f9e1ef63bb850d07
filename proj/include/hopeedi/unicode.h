#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace hopeedi {

// Unicode scalar value.
using CodePoint = char32_t;

// Decodes UTF-8; ill-formed sequences become U+FFFD.
std::u32string utf8_decode(std::string_view text);
std::string utf8_encode(std::u32string_view text);
void utf8_append(std::string& out, CodePoint cp);

bool is_letter(CodePoint cp);      // general category L*
bool is_mark(CodePoint cp);        // general category M*
bool is_decimal_digit(CodePoint cp);
bool is_white_space(CodePoint cp);  // Unicode White_Space property
CodePoint simple_lower(CodePoint cp);

// Splits on runs of Unicode white space; empty tokens are never produced.
std::vector<std::string_view> split_whitespace(std::string_view text);

// Trims ASCII white space (including CR) from both ends.
std::string_view trim_ascii(std::string_view text);

}  // namespace hopeedi
