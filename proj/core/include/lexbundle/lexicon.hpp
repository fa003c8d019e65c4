#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "lexbundle/categories.hpp"
#include "lexbundle/ngram.hpp"

namespace lexbundle {

struct GoldLabel {
  Orientation orientation;
  Subcategory subcategory;

  friend bool operator==(const GoldLabel&, const GoldLabel&) = default;
};

/// Closed-class word lists driving the structural cascade and the filter
/// heuristics, plus the functional gold table.
///
/// On disk a lexicon directory holds one `<set>.txt` file per word set (one
/// entry per line, '#' comments) and `functional_gold.tsv` with rows
/// `bundle<TAB>orientation<TAB>subcategory`.
struct LexiconSet {
  using WordSet = std::unordered_set<std::string>;

  WordSet articles;
  WordSet determiners;
  WordSet prepositions;
  WordSet pronouns;
  WordSet copula_forms;
  WordSet do_forms;
  WordSet modal_verbs;
  WordSet common_verbs;
  WordSet irregular_participles;
  WordSet to_clause_adjectives;
  WordSet subordinators;
  WordSet conjunctions;
  WordSet quantity_nouns;
  WordSet bibliographic_fragments;
  WordSet one_letter_words;
  /// Multi-word markers such as "in which"; one per line in the file.
  std::vector<NgramKey> postmodifier_markers;

  std::map<NgramKey, GoldLabel> gold;
  /// Gold rows dropped because the bundle was already listed earlier.
  std::vector<std::string> gold_duplicates;

  /// Names of the word-set files, without the .txt extension.
  static const std::vector<std::string_view>& word_set_names();

  /// Loads every file; a missing file raises IoError naming it.
  static LexiconSet load(const std::filesystem::path& dir);

  /// Throws ConfigError if sets that must be disjoint overlap.
  void validate() const;

  bool is_participle(std::string_view word) const;
  bool is_verb(std::string_view word) const;
  bool is_closed_class(std::string_view word) const;
};

/// Reads gold rows; later duplicates are skipped and recorded.
void read_gold_table(std::istream& in, LexiconSet& into);

}  // namespace lexbundle
