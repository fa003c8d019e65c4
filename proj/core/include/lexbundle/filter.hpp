#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lexbundle/association.hpp"
#include "lexbundle/corpus.hpp"
#include "lexbundle/lexicon.hpp"
#include "lexbundle/ngram.hpp"

namespace lexbundle {

enum class ExclusionReason : std::uint8_t {
  below_min_freq,
  below_min_range,
  low_mi,
  fragment_of_larger,
  ends_in_article,
  contains_numeric,
  meaningless,
  noise,
};

std::string_view to_string(ExclusionReason r);
ExclusionReason parse_exclusion_reason(std::string_view s);

enum class VerdictStatus : std::uint8_t { kept, excluded };

std::string_view to_string(VerdictStatus s);

struct FilterVerdict {
  NgramKey key;
  VerdictStatus status = VerdictStatus::kept;
  std::optional<ExclusionReason> reason;
  /// Supporting detail, e.g. the longer bundle a fragment belongs to.
  std::string evidence;

  bool kept() const { return status == VerdictStatus::kept; }

  friend bool operator==(const FilterVerdict&, const FilterVerdict&) = default;
};

struct FilterConfig {
  double min_freq_per_million = 10.0;
  std::uint64_t min_doc_range = 3;
  std::optional<double> min_mi;
  double subsumption_ratio = 0.8;
  bool apply_article_rule = true;
  /// Bundles excluded outright (reason meaningless, evidence "stoplist").
  std::vector<NgramKey> stoplist;

  /// Throws ConfigError on negative thresholds or a ratio outside (0, 1].
  void validate() const;
};

/// Reads one bundle per line, tokens separated by spaces.
std::vector<NgramKey> read_stoplist(std::istream& in);

/// True if any token is numeric or mixes digits with other characters.
bool contains_numeric(const NgramKey& key);

/// True if any token is a symbol, any character falls outside basic Latin
/// letters, digits, apostrophe and hyphen, or every token is one character.
bool is_noise(const NgramKey& key);

/// True if the last token is a, an or the.
bool ends_in_article(const NgramKey& key);

/// True for bibliographic residue ("et al", "pp", "nj", ...) and for
/// bundles built from stray single letters.
bool is_meaningless(const NgramKey& key, const LexiconSet& lexicons);

/// Share of the occurrences of `fragment` that lie inside an occurrence of
/// one of `longer_kept`. Occurrences are found by exact window matching in
/// each document. Throws UndefinedStatisticError if `fragment` never
/// occurs.
double fragment_occurrence_ratio(const NgramKey& fragment,
                                 std::span<const NgramKey> longer_kept,
                                 const Corpus& corpus);

/// Runs the exclusion cascade over every key of the table.
///
/// Checks in order: min frequency per million, min document range, MI
/// (when configured), noise, numeric, meaningless/stoplist, trailing
/// article, and finally fragment_of_larger, which walks lengths from
/// longest to shortest and judges each bundle against the longer bundles
/// already kept. The first failing check is the recorded reason.
///
/// `scores` may be null; when `config.min_mi` is set and no scores are
/// given they are computed, which requires unigram counts.
///
/// Returns one verdict per key ordered by (length, key).
std::vector<FilterVerdict> run_filters(const BundleTable& table,
                                       const MiScores* scores,
                                       const FilterConfig& config,
                                       const Corpus& corpus,
                                       const LexiconSet& lexicons);

/// TSV `ngram<TAB>status<TAB>reason<TAB>evidence` with a header row.
void write_ledger_tsv(std::ostream& out, std::span<const FilterVerdict> verdicts);
std::vector<FilterVerdict> read_ledger_tsv(std::istream& in);

std::vector<NgramKey> kept_keys(std::span<const FilterVerdict> verdicts);

/// Excluded counts per reason; reasons with zero count are omitted.
std::map<ExclusionReason, std::size_t> reason_counts(
    std::span<const FilterVerdict> verdicts);

}  // namespace lexbundle
