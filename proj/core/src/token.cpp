#include "lexbundle/token.hpp"

#include <algorithm>

#include "detail/utf8.hpp"

namespace lexbundle {
namespace detail {

char32_t decode_utf8(std::string_view s, std::size_t& pos) {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  if (b0 < 0x80) {
    ++pos;
    return b0;
  }
  int len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++pos;
    return kInvalidCodepoint;
  }
  if (pos + len > s.size()) {
    ++pos;
    return kInvalidCodepoint;
  }
  for (int i = 1; i < len; ++i) {
    const auto b = static_cast<unsigned char>(s[pos + i]);
    if ((b & 0xC0) != 0x80) {
      ++pos;
      return kInvalidCodepoint;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  // Overlong forms, surrogates and out-of-range values.
  static constexpr char32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    ++pos;
    return kInvalidCodepoint;
  }
  pos += len;
  return cp;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_letter(char32_t cp) {
  if (cp < 0x80) return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
  if (cp == 0xAA || cp == 0xB5 || cp == 0xBA) return true;
  if (cp >= 0xC0 && cp <= 0x24F) return cp != 0xD7 && cp != 0xF7;
  if (cp >= 0x250 && cp <= 0x2AF) return true;  // IPA
  if (cp >= 0x370 && cp <= 0x3FF) {
    return cp != 0x375 && cp != 0x37E && cp != 0x384 && cp != 0x385 &&
           cp != 0x387;
  }
  if (cp >= 0x400 && cp <= 0x52F) return cp < 0x482 || cp > 0x489;
  return cp >= 0x1E00 && cp <= 0x1EFF;
}

bool is_digit(char32_t cp) { return cp >= '0' && cp <= '9'; }

bool is_space(char32_t cp) {
  switch (cp) {
    case ' ': case '\t': case '\n': case '\r': case '\v': case '\f':
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000: case 0xFEFF:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200B;
  }
}

char32_t to_lower(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp < 0x80) return cp;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  if ((cp >= 0x100 && cp <= 0x137) || (cp >= 0x14A && cp <= 0x177)) {
    return cp | 1;
  }
  if (cp >= 0x139 && cp <= 0x148 && (cp & 1)) return cp + 1;
  if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) return cp + 0x20;
  if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;
  if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
  return cp;
}

std::size_t codepoint_count(std::string_view s) {
  std::size_t n = 0;
  for (std::size_t pos = 0; pos < s.size();) {
    decode_utf8(s, pos);
    ++n;
  }
  return n;
}

}  // namespace detail

namespace {

enum class Kind { separator, letter, digit, symbol, joiner };

struct Classified {
  Kind kind;
  char32_t cp;  // normalized
};

Classified classify_codepoint(char32_t cp) {
  if (detail::is_space(cp)) return {Kind::separator, cp};
  if (cp == '\'' || cp == 0x2018 || cp == 0x2019 || cp == 0x02BC) {
    return {Kind::joiner, U'\''};
  }
  if (cp == '-' || cp == 0x2010 || cp == 0x2011) return {Kind::joiner, U'-'};
  if (detail::is_letter(cp)) return {Kind::letter, detail::to_lower(cp)};
  if (detail::is_digit(cp)) return {Kind::digit, cp};
  if (cp < 0x80) return {Kind::separator, cp};
  // Latin-1 punctuation and the General Punctuation block separate tokens.
  if (cp == 0xA1 || cp == 0xA7 || cp == 0xAB || cp == 0xB6 || cp == 0xB7 ||
      cp == 0xBB || cp == 0xBF) {
    return {Kind::separator, cp};
  }
  if (cp >= 0x2010 && cp <= 0x205E) return {Kind::separator, cp};
  return {Kind::symbol, cp};
}

}  // namespace

std::string_view to_string(CharClass c) {
  switch (c) {
    case CharClass::word: return "word";
    case CharClass::numeric: return "numeric";
    case CharClass::symbol: return "symbol";
    case CharClass::mixed: return "mixed";
  }
  return "mixed";
}

CharClass classify_chars(std::string_view surface) {
  bool any_letter = false, any_digit = false, any_other = false;
  bool any_joiner = false;
  for (std::size_t pos = 0; pos < surface.size();) {
    const char32_t cp = detail::decode_utf8(surface, pos);
    if (detail::is_letter(cp)) {
      any_letter = true;
    } else if (detail::is_digit(cp)) {
      any_digit = true;
    } else if (cp == '\'' || cp == '-') {
      any_joiner = true;
    } else {
      any_other = true;
    }
  }
  if (!any_letter && !any_digit) return CharClass::symbol;
  if (any_letter && !any_digit && !any_other) return CharClass::word;
  if (any_digit && !any_letter && !any_other && !any_joiner) {
    return CharClass::numeric;
  }
  return CharClass::mixed;
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      CharClass cls = classify_chars(current);
      tokens.push_back({std::move(current), cls});
      current.clear();
    }
  };

  std::size_t pos = 0;
  while (pos < text.size()) {
    const Classified c = classify_codepoint(detail::decode_utf8(text, pos));
    switch (c.kind) {
      case Kind::separator:
        flush();
        break;
      case Kind::letter:
      case Kind::digit:
      case Kind::symbol:
        detail::append_utf8(current, c.cp);
        break;
      case Kind::joiner: {
        bool keep = false;
        if (!current.empty() && current.back() != '\'' &&
            current.back() != '-' && pos < text.size()) {
          std::size_t peek = pos;
          const Kind next =
              classify_codepoint(detail::decode_utf8(text, peek)).kind;
          keep = next == Kind::letter || next == Kind::digit ||
                 next == Kind::symbol;
        }
        if (keep) {
          current.push_back(static_cast<char>(c.cp));
        } else {
          flush();
        }
        break;
      }
    }
  }
  flush();
  return tokens;
}

namespace {

bool is_edge_punct(char c) {
  switch (c) {
    case '.': case ',': case ';': case ':': case '!': case '?': case '"':
    case '\'': case '(': case ')': case '[': case ']': case '{': case '}':
      return true;
    default:
      return false;
  }
}

bool is_alpha_chunk(std::string_view chunk) {
  while (!chunk.empty() && is_edge_punct(chunk.front())) chunk.remove_prefix(1);
  while (!chunk.empty() && is_edge_punct(chunk.back())) chunk.remove_suffix(1);
  if (chunk.empty()) return false;
  auto ascii_alpha = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  };
  if (!ascii_alpha(chunk.front()) || !ascii_alpha(chunk.back())) return false;
  return std::all_of(chunk.begin(), chunk.end(), [&](char c) {
    return ascii_alpha(c) || c == '\'' || c == '-';
  });
}

bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
}

}  // namespace

double non_alphabetic_ratio(std::string_view line) {
  std::size_t chunks = 0, non_alpha = 0;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_ascii_space(line[i])) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && !is_ascii_space(line[j])) ++j;
    ++chunks;
    if (!is_alpha_chunk(line.substr(i, j - i))) ++non_alpha;
    i = j;
  }
  if (chunks == 0) return 0.0;
  return static_cast<double>(non_alpha) / static_cast<double>(chunks);
}

std::string strip_noise_lines(std::string_view text, double threshold) {
  std::string out;
  out.reserve(text.size());
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    const std::size_t next = end == std::string_view::npos ? text.size() : end + 1;
    if (end == std::string_view::npos) end = text.size();
    if (non_alphabetic_ratio(text.substr(start, end - start)) <= threshold) {
      out.append(text.substr(start, next - start));
    }
    start = next;
  }
  return out;
}

bool is_valid_utf8(std::string_view bytes) {
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    const std::size_t before = pos;
    const char32_t cp = detail::decode_utf8(bytes, pos);
    if (cp == detail::kInvalidCodepoint) {
      // A literal U+FFFD is three bytes; a decoding failure consumes one.
      if (pos - before != 3) return false;
    }
  }
  return true;
}

}  // namespace lexbundle
