#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "lexbundle/association.hpp"
#include "lexbundle/error.hpp"
#include "lexbundle_test/oracle.hpp"
#include "lexbundle_test/synthetic.hpp"

namespace lexbundle {
namespace {

NgramKey key(std::string_view s) { return NgramKey::parse(s); }

TEST(MutualInformation, FixtureValues) {
  const auto c = test::corpus_from_texts({"a b a b a b"});
  const auto t = count_ngrams(c, 1, 5);
  EXPECT_NEAR(mutual_information(key("a b"), t), 1.2630, 5e-5);
  EXPECT_NEAR(mutual_information(key("a b"), t), std::log2(2.4), 1e-12);
  EXPECT_NEAR(mutual_information(key("a b a"), t), 2.0, 1e-12);
  EXPECT_EQ(mutual_information(key("a"), t), 0.0);
}

TEST(MutualInformation, RequiresUnigrams) {
  const auto c = test::corpus_from_texts({"a b a b a b"});
  const auto t = count_ngrams(c, 2, 3);
  EXPECT_THROW(mutual_information(key("a b"), t), PrerequisiteError);
  EXPECT_THROW(score_all(t), PrerequisiteError);
}

TEST(MiThreshold, Partition) {
  const auto t = count_ngrams(test::corpus_from_texts({"a b a b a b"}), 1, 3);
  const auto p = apply_mi_threshold(t, 1.5);
  ASSERT_EQ(p.failing.size(), 2u);
  EXPECT_EQ(p.failing[0].first, key("a b"));
  EXPECT_NEAR(p.failing[0].second, std::log2(2.4), 1e-12);
  EXPECT_EQ(p.failing[1].first, key("b a"));
  EXPECT_NE(std::find(p.passing.begin(), p.passing.end(), key("a b a")), p.passing.end());
  EXPECT_NE(std::find(p.passing.begin(), p.passing.end(), key("a")), p.passing.end());

  const auto all = apply_mi_threshold(t, -std::numeric_limits<double>::infinity());
  EXPECT_TRUE(all.failing.empty());
  EXPECT_EQ(all.passing.size(), t.size());
}

TEST(MiThreshold, ChanceRateIsBoundaryPass) {
  // P(a b) = 1/4 and P(a) = P(b) = 1/2.
  const auto c = test::corpus_from_texts({"a b", "a a", "b b", "b a"});
  const auto t = count_ngrams(c, 1, 2);
  const double mi = mutual_information(key("a b"), t);
  EXPECT_NEAR(mi, 0.0, 1e-12);
  const auto p = apply_mi_threshold(t, 0.0);
  EXPECT_TRUE(p.failing.empty());
}

TEST(MutualInformation, PropertyMatchesOracle) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    test::RandomCorpusSpec spec;
    spec.max_tokens = 500;
    spec.vocabulary = 3 + static_cast<std::size_t>(trial % 5);
    const auto c = test::random_corpus(rng, spec);
    const auto t = count_ngrams(c, 1, 5);
    for (const auto& [k, mi] : score_all(t)) {
      EXPECT_NEAR(mi, test::oracle_mi(k.tokens(), c), 1e-9) << k.joined();
    }
  }
}

TEST(MutualInformation, PropertyInvariantUnderDuplication) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = test::random_corpus(rng, {.max_documents = 4, .max_tokens = 400, .vocabulary = 5});
    std::vector<Document> doubled = c.documents();
    for (auto d : c.documents()) {
      d.id += "-copy";
      doubled.push_back(std::move(d));
    }
    const auto once = score_all(count_ngrams(c, 1, 5));
    const auto twice = score_all(count_ngrams(Corpus(std::move(doubled)), 1, 5));
    ASSERT_EQ(once.size(), twice.size());
    for (const auto& [k, mi] : once) EXPECT_NEAR(mi, twice.at(k), 1e-9);
  }
}

TEST(MutualInformation, PropertyDeterministicPairs) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    // "qa" is always followed by "qb" and "qb" always preceded by "qa".
    std::vector<std::string> words;
    std::uniform_int_distribution<int> coin(0, 3);
    for (int i = 0; i < 200; ++i) {
      if (coin(rng) == 0) {
        words.push_back("qa");
        words.push_back("qb");
      } else {
        words.push_back(test::word_for(static_cast<std::size_t>(coin(rng))));
      }
    }
    std::vector<Document> docs{test::document_from_words("d", words)};
    const Corpus c(std::move(docs));
    const auto t = count_ngrams(c, 1, 2);
    if (!t.contains(key("qa qb"))) continue;
    const double n1 = static_cast<double>(t.window_total(1));
    const double n2 = static_cast<double>(t.window_total(2));
    const double raw = static_cast<double>(t.at(key("qa qb")).raw_freq);
    EXPECT_NEAR(mutual_information(key("qa qb"), t), std::log2(n1 * n1 / (n2 * raw)), 1e-9);
    EXPECT_NEAR(mutual_information(key("qa qb"), t), test::oracle_mi({"qa", "qb"}, c), 1e-9);
  }
}

TEST(MiTsv, Format) {
  const auto t = count_ngrams(test::corpus_from_texts({"a b a b a b"}), 1, 2);
  std::ostringstream out;
  write_mi_tsv(out, score_all(t));
  EXPECT_NE(out.str().find("ngram\tmi_bits\n"), std::string::npos);
  EXPECT_NE(out.str().find("a b\t1.263034\n"), std::string::npos);
}

}  // namespace
}  // namespace lexbundle
