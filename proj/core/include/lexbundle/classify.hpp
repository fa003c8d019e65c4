#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>

#include "lexbundle/categories.hpp"
#include "lexbundle/lexicon.hpp"
#include "lexbundle/ngram.hpp"

namespace lexbundle {

struct FunctionalCategory {
  Orientation orientation = Orientation::text;
  Subcategory subcategory = Subcategory::structuring;
  Provenance provenance = Provenance::unknown;

  friend bool operator==(const FunctionalCategory&,
                         const FunctionalCategory&) = default;
};

/// Structural category from an ordered rule cascade over closed-class word
/// lists. The first matching rule wins:
///
///   1. "it" + copula/modal                      anticipatory_it
///   2. pronoun/there/this + copula or do-form    pronoun_np_be
///   3. (modal) copula (to be) participle prep    passive_vp_pp
///   4. (modal) copula, no to-infinitive          copula_be_np_adj
///   5. verb + "that", or leading "that" + subject vp_that_clause
///   6. verb/adjective + "to" (final or + verb)   verb_adj_to_clause
///   7. as/when/if + clause material              adverbial_clause
///   8. preposition ... of                        pp_embedded_of
///   9. preposition                               pp_other
///  10. noun phrase ... of                        np_of_fragment
///  11. noun phrase + in which/between/that/as    np_other_postmodifier
///  12. anything else                             other_expressions
///
/// Single-token keys are always other_expressions.
StructuralCategory classify_structure(const NgramKey& key,
                                      const LexiconSet& lexicons);

/// Gold-table lookup, falling back to lexical patterns. Bundles matching no
/// pattern come back as text/structuring with provenance unknown.
FunctionalCategory classify_function(const NgramKey& key,
                                     const LexiconSet& lexicons);

struct CategoryHistogram {
  std::array<std::size_t, kSubcategoryCount> by_subcategory{};
  std::array<std::size_t, 3> by_orientation{};
  std::size_t total = 0;

  std::size_t count(Subcategory s) const {
    return by_subcategory[static_cast<std::size_t>(s)];
  }
  std::size_t count(Orientation o) const {
    return by_orientation[static_cast<std::size_t>(o)];
  }
  /// Most frequent subcategory; ties go to the earlier enumerator. Empty
  /// histograms report location.
  Subcategory modal_subcategory() const;
};

CategoryHistogram category_histogram(std::span<const FunctionalCategory> assignments);

struct Classification {
  NgramKey key;
  StructuralCategory structural;
  FunctionalCategory functional;
};

/// TSV `ngram<TAB>structural<TAB>orientation<TAB>subcategory<TAB>provenance`
/// with a header row.
void write_classification_tsv(std::ostream& out,
                              std::span<const Classification> rows);

}  // namespace lexbundle
