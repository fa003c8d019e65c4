#pragma once

#include <cstdint>
#include <string_view>

namespace lexbundle {

enum class StructuralCategory : std::uint8_t {
  np_of_fragment,
  np_other_postmodifier,
  pp_embedded_of,
  pp_other,
  anticipatory_it,
  passive_vp_pp,
  copula_be_np_adj,
  vp_that_clause,
  verb_adj_to_clause,
  adverbial_clause,
  pronoun_np_be,
  other_expressions,
};
inline constexpr int kStructuralCategoryCount = 12;

enum class Orientation : std::uint8_t { research, text, participant };

enum class Subcategory : std::uint8_t {
  location,
  procedure,
  quantification,
  description,
  topic,
  transition,
  resultative,
  structuring,
  framing,
  stance,
  engagement,
};
inline constexpr int kSubcategoryCount = 11;

enum class Provenance : std::uint8_t { gold_lookup, pattern, unknown };

/// The orientation a subcategory belongs to.
Orientation orientation_of(Subcategory s);

std::string_view to_string(StructuralCategory c);
std::string_view to_string(Orientation o);
std::string_view to_string(Subcategory s);
std::string_view to_string(Provenance p);

// Case-insensitive; throw ConfigError on unknown names.
StructuralCategory parse_structural(std::string_view s);
Orientation parse_orientation(std::string_view s);
Subcategory parse_subcategory(std::string_view s);

}  // namespace lexbundle
