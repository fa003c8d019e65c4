#pragma once

#include <iosfwd>
#include <map>
#include <utility>
#include <vector>

#include "lexbundle/ngram.hpp"

namespace lexbundle {

using MiScores = std::map<NgramKey, double>;

/// Pointwise mutual information in bits:
///
///   log2( P(w1..wn) / prod_i P(wi) )
///
/// with P(w1..wn) = raw_freq(key) / N_n over the n-length windows and
/// P(wi) = raw_freq(wi) / N_1 over tokens. Always 0 for a unigram.
///
/// Throws ConfigError if the key is not in the table, PrerequisiteError if
/// the table was counted without unigrams, UndefinedStatisticError if there
/// are no windows of the key's length.
double mutual_information(const NgramKey& key, const BundleTable& table);

/// Scores every key of length >= 2.
MiScores score_all(const BundleTable& table);

struct MiPartition {
  /// Keys with score >= threshold, plus every unigram. Ascending order.
  std::vector<NgramKey> passing;
  /// Keys below the threshold with their scores. Ascending order.
  std::vector<std::pair<NgramKey, double>> failing;
};

MiPartition apply_mi_threshold(const BundleTable& table, double min_mi);

inline constexpr double kDefaultMinMi = 3.0;

/// TSV `ngram<TAB>mi_bits`, six decimal places, with a header row.
void write_mi_tsv(std::ostream& out, const MiScores& scores);

}  // namespace lexbundle
