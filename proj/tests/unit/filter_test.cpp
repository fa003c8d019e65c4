#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "lexbundle/association.hpp"
#include "lexbundle/error.hpp"
#include "lexbundle/filter.hpp"
#include "lexbundle/lexicon.hpp"
#include "lexbundle_test/synthetic.hpp"

namespace lexbundle {
namespace {

NgramKey key(std::string_view s) { return NgramKey::parse(s); }

const LexiconSet& lexicons() {
  static const LexiconSet lex = LexiconSet::load(LEXBUNDLE_TEST_LEXICON_DIR);
  return lex;
}

FilterConfig permissive() {
  FilterConfig cfg;
  cfg.min_freq_per_million = 0;
  cfg.min_doc_range = 1;
  return cfg;
}

const FilterVerdict& find(const std::vector<FilterVerdict>& vs, std::string_view k) {
  for (const auto& v : vs) {
    if (v.key == key(k)) return v;
  }
  throw std::runtime_error("no verdict for " + std::string(k));
}

TEST(Checks, ContainsNumeric) {
  EXPECT_TRUE(contains_numeric(key("page 12")));
  EXPECT_TRUE(contains_numeric(key("from gate 2 in 1999")));
  EXPECT_TRUE(contains_numeric(key("the h2o")));
  EXPECT_FALSE(contains_numeric(key("the number of")));
}

TEST(Checks, Noise) {
  EXPECT_TRUE(is_noise(key("â â â â")));
  EXPECT_TRUE(is_noise(key("t l t l")));
  EXPECT_TRUE(is_noise(key("pp ###â ###")));
  EXPECT_FALSE(is_noise(key("as well as")));
  EXPECT_FALSE(is_noise(key("i'm going to")));
}

TEST(Checks, EndsInArticle) {
  EXPECT_TRUE(ends_in_article(key("in addition to the")));
  EXPECT_TRUE(ends_in_article(key("the output of the")));
  EXPECT_TRUE(ends_in_article(key("there is an")));
  EXPECT_FALSE(ends_in_article(key("the number of")));
}

TEST(Checks, Meaningless) {
  EXPECT_TRUE(is_meaningless(key("englewood cliffs nj prentice-hall"), lexicons()));
  EXPECT_TRUE(is_meaningless(key("de bot t van els"), lexicons()));
  EXPECT_TRUE(is_meaningless(key("et al"), lexicons()));
  EXPECT_FALSE(is_meaningless(key("on the other hand"), lexicons()));
  EXPECT_FALSE(is_meaningless(key("a set of"), lexicons()));
}

TEST(FilterConfig, Validation) {
  FilterConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.subsumption_ratio = 0.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg.subsumption_ratio = 1.5;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.min_freq_per_million = -1;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(FragmentRatio, Examples) {
  const auto c = test::corpus_from_texts({"we can be used to can be used to can be"});
  const std::vector<NgramKey> longer{key("can be used to")};
  EXPECT_DOUBLE_EQ(fragment_occurrence_ratio(key("can be"), longer, c), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(fragment_occurrence_ratio(key("we can"), longer, c), 0.0);
  EXPECT_DOUBLE_EQ(fragment_occurrence_ratio(key("be used"), longer, c), 1.0);
  EXPECT_THROW(fragment_occurrence_ratio(key("not here"), longer, c), UndefinedStatisticError);
}

TEST(RunFilters, TableExamples) {
  std::vector<std::string> texts;
  for (int i = 0; i < 5; ++i) texts.push_back("there is no need to");
  texts.push_back("there is no way");
  const auto c = test::corpus_from_texts(texts);
  auto t = count_ngrams(c, 1, 5);
  t.insert(key("pp ###â ###"), 3, 3);
  const auto vs = run_filters(t, nullptr, permissive(), c, lexicons());
  const auto& there = find(vs, "there is no");
  EXPECT_EQ(there.reason, ExclusionReason::fragment_of_larger);
  EXPECT_EQ(there.evidence, "there is no need to");
  EXPECT_EQ(find(vs, "pp ###â ###").reason, ExclusionReason::noise);
  EXPECT_TRUE(find(vs, "there is no need to").kept());
  EXPECT_FALSE(find(vs, "there is no need to").reason.has_value());
}

TEST(RunFilters, ThresholdsComeFirst) {
  const auto c = test::corpus_from_texts({"on page 12 today", "on page 12 again", "x y z"});
  const auto t = count_ngrams(c, 1, 3);
  FilterConfig cfg = permissive();
  cfg.min_doc_range = 2;
  const auto vs = run_filters(t, nullptr, cfg, c, lexicons());
  EXPECT_EQ(find(vs, "page 12").reason, ExclusionReason::contains_numeric);
  EXPECT_EQ(find(vs, "12 today").reason, ExclusionReason::below_min_range);
  cfg.min_freq_per_million = 1e6;
  const auto strict = run_filters(t, nullptr, cfg, c, lexicons());
  EXPECT_EQ(find(strict, "page 12").reason, ExclusionReason::below_min_freq);
}

TEST(RunFilters, FirstReasonWins) {
  // Numeric and article: numeric is checked first.
  // Noise and meaningless: noise is checked first.
  const auto c = test::corpus_from_texts({"see 12 the", "see 12 the"});
  auto t = count_ngrams(c, 1, 3);
  t.insert(key("et ###"), 2, 2);
  const auto vs = run_filters(t, nullptr, permissive(), c, lexicons());
  EXPECT_EQ(find(vs, "12 the").reason, ExclusionReason::contains_numeric);
  EXPECT_EQ(find(vs, "et ###").reason, ExclusionReason::noise);
}

TEST(RunFilters, LowMiNeedsUnigrams) {
  const auto c = test::corpus_from_texts({"a b a b a b"});
  FilterConfig cfg = permissive();
  cfg.min_mi = 1.5;
  const auto no_unigrams = count_ngrams(c, 2, 3);
  EXPECT_THROW(run_filters(no_unigrams, nullptr, cfg, c, lexicons()), PrerequisiteError);

  const auto t = count_ngrams(c, 1, 3);
  const auto scores = score_all(t);
  const auto vs = run_filters(t, &scores, cfg, c, lexicons());
  EXPECT_EQ(find(vs, "a b").reason, ExclusionReason::low_mi);
}

TEST(RunFilters, StoplistAndArticleToggle) {
  const auto c = test::corpus_from_texts({"an integrated model of the", "an integrated model of the"});
  const auto t = count_ngrams(c, 2, 5);
  FilterConfig cfg = permissive();
  cfg.stoplist = {key("an integrated model")};
  auto vs = run_filters(t, nullptr, cfg, c, lexicons());
  EXPECT_EQ(find(vs, "an integrated model").reason, ExclusionReason::meaningless);
  EXPECT_EQ(find(vs, "an integrated model").evidence, "stoplist");
  EXPECT_EQ(find(vs, "model of the").reason, ExclusionReason::ends_in_article);
  cfg.apply_article_rule = false;
  vs = run_filters(t, nullptr, cfg, c, lexicons());
  EXPECT_TRUE(find(vs, "an integrated model of the").kept());
}

TEST(RunFilters, PropertyCompleteAndOrdered) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 25; ++trial) {
    const auto c = test::random_corpus(rng, {.max_documents = 6, .max_tokens = 600, .vocabulary = 6});
    const auto t = count_ngrams(c, 1, 5);
    const auto vs = run_filters(t, nullptr, permissive(), c, lexicons());
    ASSERT_EQ(vs.size(), t.size());
    for (std::size_t i = 0; i < vs.size(); ++i) {
      EXPECT_TRUE(t.contains(vs[i].key));
      EXPECT_EQ(vs[i].kept(), !vs[i].reason.has_value());
      if (i > 0) {
        const auto& a = vs[i - 1].key;
        const auto& b = vs[i].key;
        EXPECT_TRUE(a.size() < b.size() || (a.size() == b.size() && a < b));
      }
    }
    EXPECT_EQ(vs, run_filters(t, nullptr, permissive(), c, lexicons()));
  }
}

TEST(RunFilters, PropertySubsumptionMonotone) {
  std::mt19937_64 rng(47);
  const std::vector<double> ratios{0.3, 0.5, 0.7, 0.8, 0.9, 1.0};
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = test::random_corpus(rng, {.max_documents = 5, .max_tokens = 400, .vocabulary = 4});
    const auto t = count_ngrams(c, 1, 5);
    std::vector<std::vector<FilterVerdict>> runs;
    for (double r : ratios) {
      FilterConfig cfg = permissive();
      cfg.subsumption_ratio = r;
      runs.push_back(run_filters(t, nullptr, cfg, c, lexicons()));
    }
    for (std::size_t i = 1; i < runs.size(); ++i) {
      for (std::size_t j = 0; j < runs[i].size(); ++j) {
        if (runs[i - 1][j].kept()) EXPECT_TRUE(runs[i][j].kept()) << runs[i][j].key.joined();
      }
    }
  }
}

TEST(Ledger, RoundTripAndCounts) {
  const auto c = test::corpus_from_texts({"see page 12 here", "see page 12 there"});
  const auto t = count_ngrams(c, 2, 3);
  const auto vs = run_filters(t, nullptr, permissive(), c, lexicons());
  std::ostringstream out;
  write_ledger_tsv(out, vs);
  EXPECT_EQ(out.str().rfind("ngram\tstatus\treason\tevidence\n", 0), 0u);
  std::istringstream in(out.str());
  EXPECT_EQ(read_ledger_tsv(in), vs);

  const auto counts = reason_counts(vs);
  std::size_t excluded = 0;
  for (const auto& [r, n] : counts) excluded += n;
  EXPECT_EQ(excluded + kept_keys(vs).size(), vs.size());
  EXPECT_FALSE(counts.contains(ExclusionReason::low_mi));
}

TEST(Stoplist, Reads) {
  std::istringstream in("# comment\nan integrated model\n\nthe operator\n");
  EXPECT_EQ(read_stoplist(in), (std::vector<NgramKey>{key("an integrated model"), key("the operator")}));
}

}  // namespace
}  // namespace lexbundle
