#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lexbundle {

enum class CharClass : std::uint8_t { word, numeric, symbol, mixed };

std::string_view to_string(CharClass c);

/// A normalized word unit. `surface` is lowercase, non-empty and free of
/// whitespace.
struct Token {
  std::string surface;
  CharClass char_class = CharClass::word;

  friend bool operator==(const Token&, const Token&) = default;
};

/// Character class of an already-normalized surface string.
///
/// word: every character is a letter, with apostrophes or hyphens allowed
/// between letters; numeric: every character is a digit; symbol: no letter
/// or digit at all; mixed: anything else.
CharClass classify_chars(std::string_view surface);

/// Splits `text` into lowercase tokens. Whitespace and punctuation separate
/// tokens; an apostrophe or hyphen survives only between two token
/// characters ("i'm", "prentice-hall"). Typographic quotes are folded to
/// ASCII. Invalid UTF-8 bytes are treated as symbol characters.
std::vector<Token> tokenize(std::string_view text);

/// Fraction of whitespace-delimited chunks on `line` that are not plain
/// alphabetic words. Returns 0 for a blank line.
double non_alphabetic_ratio(std::string_view line);

inline constexpr double kDefaultNoiseThreshold = 0.5;

/// Drops lines whose non_alphabetic_ratio exceeds `threshold`. Surviving
/// lines are passed through byte-for-byte, including their terminators.
std::string strip_noise_lines(std::string_view text,
                              double threshold = kDefaultNoiseThreshold);

bool is_valid_utf8(std::string_view bytes);

}  // namespace lexbundle
