#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace lexbundle::detail {

inline constexpr char32_t kInvalidCodepoint = 0xFFFD;

/// Decodes the code point starting at `pos` and advances `pos` past it.
/// Malformed sequences decode to U+FFFD and consume one byte.
char32_t decode_utf8(std::string_view s, std::size_t& pos);

void append_utf8(std::string& out, char32_t cp);

bool is_letter(char32_t cp);
bool is_digit(char32_t cp);
bool is_space(char32_t cp);
char32_t to_lower(char32_t cp);

/// Number of code points in a valid UTF-8 string.
std::size_t codepoint_count(std::string_view s);

}  // namespace lexbundle::detail
