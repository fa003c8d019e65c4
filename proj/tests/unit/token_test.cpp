#include <gtest/gtest.h>

#include <random>

#include "lexbundle/token.hpp"

namespace lexbundle {
namespace {

std::vector<std::string> surfaces(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const auto& t : tokens) out.push_back(t.surface);
  return out;
}

std::string join(const std::vector<Token>& tokens) {
  std::string s;
  for (const auto& t : tokens) {
    if (!s.empty()) s += ' ';
    s += t.surface;
  }
  return s;
}

TEST(Tokenize, LowercasesAndStripsPunctuation) {
  const auto tokens = tokenize("Can be used.");
  ASSERT_EQ(tokens.size(), 3u);
  EXPECT_EQ(surfaces(tokens), (std::vector<std::string>{"can", "be", "used"}));
  for (const auto& t : tokens) EXPECT_EQ(t.char_class, CharClass::word);
}

TEST(Tokenize, DigitsBecomeNumericTokens) {
  const auto tokens = tokenize("page 12");
  ASSERT_EQ(tokens.size(), 2u);
  EXPECT_EQ(tokens[0], (Token{"page", CharClass::word}));
  EXPECT_EQ(tokens[1], (Token{"12", CharClass::numeric}));
}

TEST(Tokenize, KeepsIntraWordApostrophe) {
  EXPECT_EQ(surfaces(tokenize("so I'm going to")),
            (std::vector<std::string>{"so", "i'm", "going", "to"}));
  EXPECT_EQ(surfaces(tokenize("so I’m going")),
            (std::vector<std::string>{"so", "i'm", "going"}));
}

TEST(Tokenize, KeepsIntraWordHyphenOnly) {
  EXPECT_EQ(surfaces(tokenize("Englewood Cliffs, NJ: Prentice-Hall")),
            (std::vector<std::string>{"englewood", "cliffs", "nj", "prentice-hall"}));
  EXPECT_EQ(surfaces(tokenize("- well -known 'quoted'")),
            (std::vector<std::string>{"well", "known", "quoted"}));
}

TEST(Tokenize, EmptyAndPunctuationOnly) {
  EXPECT_TRUE(tokenize("").empty());
  EXPECT_TRUE(tokenize("  ... ,;: !? \n\t").empty());
}

TEST(Tokenize, MixedAndNonAsciiClasses) {
  const auto tokens = tokenize("h2o café 181â");
  ASSERT_EQ(tokens.size(), 3u);
  EXPECT_EQ(tokens[0].char_class, CharClass::mixed);
  EXPECT_EQ(tokens[1], (Token{"café", CharClass::word}));
  EXPECT_EQ(tokens[2].char_class, CharClass::mixed);
}

TEST(ClassifyChars, Classes) {
  EXPECT_EQ(classify_chars("word"), CharClass::word);
  EXPECT_EQ(classify_chars("1999"), CharClass::numeric);
  EXPECT_EQ(classify_chars("###"), CharClass::symbol);
  EXPECT_EQ(classify_chars("a1"), CharClass::mixed);
}

TEST(Tokenize, PropertyIdempotentAndClean) {
  std::mt19937_64 rng(7);
  const std::string alphabet = "abcXYZ019 '-.,;!?\t\né’";
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::uniform_int_distribution<int> len(0, 80);
  for (int trial = 0; trial < 500; ++trial) {
    std::string text;
    for (int i = len(rng); i > 0; --i) text += alphabet[pick(rng)];
    if (!is_valid_utf8(text)) continue;
    const auto first = tokenize(text);
    for (const auto& t : first) {
      EXPECT_EQ(t.surface.find_first_of(" \t\n"), std::string::npos);
      for (char c : t.surface) EXPECT_FALSE(c >= 'A' && c <= 'Z');
    }
    EXPECT_EQ(tokenize(join(first)), first) << text;
  }
}

TEST(NoiseLines, RatioExamples) {
  EXPECT_DOUBLE_EQ(non_alphabetic_ratio("lexical bundles are sequences of words"), 0.0);
  EXPECT_DOUBLE_EQ(non_alphabetic_ratio("   "), 0.0);
  EXPECT_GT(non_alphabetic_ratio("x = Σ p(w) log p(w)"), 0.5);
}

TEST(NoiseLines, StripExamples) {
  EXPECT_EQ(strip_noise_lines("x = Σ p(w) log p(w)\n"), "");
  EXPECT_EQ(strip_noise_lines("lexical bundles are sequences of words\n"),
            "lexical bundles are sequences of words\n");
  EXPECT_EQ(strip_noise_lines("pp 181â 190\nkept line here\n"), "kept line here\n");
}

TEST(NoiseLines, ThresholdIsConfigurable) {
  const std::string line = "see table 4 and 5\n";
  EXPECT_EQ(strip_noise_lines(line, 0.5), line);
  EXPECT_EQ(strip_noise_lines(line, 0.3), "");
}

TEST(NoiseLines, PropertyIdempotent) {
  std::mt19937_64 rng(11);
  const std::vector<std::string> pieces{"word", "12", "=", "(x)", "the", "#", "\n", " "};
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
  for (int trial = 0; trial < 300; ++trial) {
    std::string text;
    for (int i = 0; i < 40; ++i) text += pieces[pick(rng)];
    const auto once = strip_noise_lines(text);
    EXPECT_EQ(strip_noise_lines(once), once);
  }
}

TEST(Utf8, Validation) {
  EXPECT_TRUE(is_valid_utf8("plain ascii"));
  EXPECT_TRUE(is_valid_utf8("café ’"));
  EXPECT_FALSE(is_valid_utf8("\xff\xfe"));
  EXPECT_FALSE(is_valid_utf8("\xc3"));
}

}  // namespace
}  // namespace lexbundle
