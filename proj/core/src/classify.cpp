#include "lexbundle/classify.hpp"

#include <algorithm>
#include <ostream>

namespace lexbundle {

namespace {

using Tokens = std::vector<std::string>;

bool in(const LexiconSet::WordSet& set, const std::string& w) { return set.count(w) > 0; }

/// True if `seq` occurs contiguously in `tokens` starting at or after `from`.
bool contains_seq(const Tokens& tokens, std::initializer_list<std::string_view> seq,
                  std::size_t from = 0) {
  const std::size_t n = seq.size();
  for (std::size_t i = from; i + n <= tokens.size(); ++i) {
    if (std::equal(seq.begin(), seq.end(), tokens.begin() + i)) return true;
  }
  return false;
}

bool contains_seq(const Tokens& tokens, const Tokens& seq, std::size_t from) {
  const std::size_t n = seq.size();
  for (std::size_t i = from; i + n <= tokens.size(); ++i) {
    if (std::equal(seq.begin(), seq.end(), tokens.begin() + i)) return true;
  }
  return false;
}

bool contains_word(const Tokens& tokens, std::string_view w, std::size_t from = 0) {
  return std::find(tokens.begin() + std::min(from, tokens.size()), tokens.end(), w) !=
         tokens.end();
}

/// Index of the copula opening the bundle, allowing one leading modal
/// ("may be due to"); -1 if the bundle does not open with a copula.
int leading_copula(const Tokens& t, const LexiconSet& lex) {
  if (in(lex.copula_forms, t[0])) return 0;
  if (t.size() > 1 && in(lex.modal_verbs, t[0]) && in(lex.copula_forms, t[1])) return 1;
  return -1;
}

bool has_to_infinitive(const Tokens& t, const LexiconSet& lex) {
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    if (t[i] == "to" && lex.is_verb(t[i + 1])) return true;
  }
  return false;
}

bool noun_phrase_start(const std::string& w, const LexiconSet& lex) {
  if (in(lex.articles, w) || in(lex.determiners, w)) return true;
  return !lex.is_closed_class(w) && !lex.is_participle(w);
}

bool rule_anticipatory_it(const Tokens& t, const LexiconSet& lex) {
  return t[0] == "it" && (in(lex.copula_forms, t[1]) || in(lex.modal_verbs, t[1]));
}

bool rule_pronoun_be(const Tokens& t, const LexiconSet& lex) {
  const bool subject = in(lex.pronouns, t[0]) || t[0] == "there" || t[0] == "this";
  return subject && (in(lex.copula_forms, t[1]) || in(lex.do_forms, t[1]));
}

bool rule_passive(const Tokens& t, const LexiconSet& lex) {
  const int cop = leading_copula(t, lex);
  if (cop < 0) return false;
  // Copula, optionally "to be"/"not"/"been", then participle + preposition.
  for (std::size_t i = cop + 1; i + 1 < t.size(); ++i) {
    if (lex.is_participle(t[i])) return in(lex.prepositions, t[i + 1]);
    const bool filler = t[i] == "to" || t[i] == "not" || in(lex.copula_forms, t[i]);
    if (!filler) return false;
  }
  return false;
}

bool rule_copula(const Tokens& t, const LexiconSet& lex) {
  const int cop = leading_copula(t, lex);
  if (cop < 0) return false;
  for (std::size_t i = cop + 1; i < t.size(); ++i) {
    if (lex.is_participle(t[i])) return false;
  }
  return !has_to_infinitive(t, lex);
}

bool rule_that_clause(const Tokens& t, const LexiconSet& lex) {
  if (t[0] == "that" && (in(lex.pronouns, t[1]) || t[1] == "there")) return true;
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (t[i] == "that" && lex.is_verb(t[i - 1])) return true;
  }
  return false;
}

bool rule_to_clause(const Tokens& t, const LexiconSet& lex) {
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (t[i] != "to") continue;
    const bool complement = i + 1 == t.size() || lex.is_verb(t[i + 1]);
    const bool head = lex.is_verb(t[i - 1]) || in(lex.to_clause_adjectives, t[i - 1]);
    if (complement && head) return true;
  }
  return false;
}

bool rule_adverbial(const Tokens& t, const LexiconSet& lex) {
  if (!in(lex.subordinators, t[0])) return false;
  const std::string& next = t[1];
  return in(lex.pronouns, next) || lex.is_verb(next) || in(lex.modal_verbs, next);
}

bool rule_postmodifier(const Tokens& t, const LexiconSet& lex) {
  return std::any_of(lex.postmodifier_markers.begin(), lex.postmodifier_markers.end(),
                     [&](const NgramKey& m) { return contains_seq(t, m.tokens(), 1); });
}

}  // namespace

StructuralCategory classify_structure(const NgramKey& key, const LexiconSet& lex) {
  const Tokens& t = key.tokens();
  if (t.size() < 2) return StructuralCategory::other_expressions;

  if (rule_anticipatory_it(t, lex)) return StructuralCategory::anticipatory_it;
  if (rule_pronoun_be(t, lex)) return StructuralCategory::pronoun_np_be;
  if (rule_passive(t, lex)) return StructuralCategory::passive_vp_pp;
  if (rule_copula(t, lex)) return StructuralCategory::copula_be_np_adj;
  if (rule_that_clause(t, lex)) return StructuralCategory::vp_that_clause;
  if (rule_to_clause(t, lex)) return StructuralCategory::verb_adj_to_clause;
  if (rule_adverbial(t, lex)) return StructuralCategory::adverbial_clause;
  if (in(lex.prepositions, t[0])) {
    return contains_word(t, "of", 1) ? StructuralCategory::pp_embedded_of
                                     : StructuralCategory::pp_other;
  }
  if (noun_phrase_start(t[0], lex)) {
    if (contains_word(t, "of", 1)) return StructuralCategory::np_of_fragment;
    if (rule_postmodifier(t, lex)) return StructuralCategory::np_other_postmodifier;
  }
  return StructuralCategory::other_expressions;
}

namespace {

FunctionalCategory pattern(Subcategory s) {
  return {orientation_of(s), s, Provenance::pattern};
}

}  // namespace

FunctionalCategory classify_function(const NgramKey& key, const LexiconSet& lex) {
  if (auto it = lex.gold.find(key); it != lex.gold.end()) {
    return {it->second.orientation, it->second.subcategory, Provenance::gold_lookup};
  }
  const Tokens& t = key.tokens();
  auto has = [&](std::string_view w) { return contains_word(t, w); };

  if (std::any_of(t.begin(), t.end(), [&](const auto& w) { return in(lex.quantity_nouns, w); })) {
    return pattern(Subcategory::quantification);
  }
  if (has("figure") || has("fig") || has("table") || has("figures") || has("tables")) {
    return pattern(Subcategory::location);
  }
  if (contains_seq(t, {"going", "to"}) || contains_seq(t, {"you", "can", "see"}) ||
      has("i") || has("i'm") || has("we") || has("we're") || has("we'll") ||
      has("you") || has("you're") || has("let's")) {
    return pattern(Subcategory::engagement);
  }
  if (has("result") || has("results") || has("likely") ||
      contains_seq(t, {"turn", "out"}) || contains_seq(t, {"turns", "out"})) {
    return pattern(Subcategory::resultative);
  }
  if (contains_seq(t, {"other", "hand"}) || contains_seq(t, {"one", "hand"})) {
    return pattern(Subcategory::transition);
  }
  if (has("noted") || has("extent") || has("degree") || contains_seq(t, {"way", "that"})) {
    return pattern(Subcategory::framing);
  }
  if (has("example")) return pattern(Subcategory::stance);
  if (has("referred") || has("defined") || contains_seq(t, {"known", "as"})) {
    return pattern(Subcategory::description);
  }
  if (contains_seq(t, {"of", "the"}) || contains_seq(t, {"fact", "that"})) {
    return pattern(Subcategory::structuring);
  }
  return {Orientation::text, Subcategory::structuring, Provenance::unknown};
}

Subcategory CategoryHistogram::modal_subcategory() const {
  const auto it = std::max_element(by_subcategory.begin(), by_subcategory.end());
  return static_cast<Subcategory>(it - by_subcategory.begin());
}

CategoryHistogram category_histogram(std::span<const FunctionalCategory> assignments) {
  CategoryHistogram h;
  for (const auto& a : assignments) {
    ++h.by_subcategory[static_cast<std::size_t>(a.subcategory)];
    ++h.by_orientation[static_cast<std::size_t>(a.orientation)];
    ++h.total;
  }
  return h;
}

void write_classification_tsv(std::ostream& out, std::span<const Classification> rows) {
  std::string buf = "ngram\tstructural\torientation\tsubcategory\tprovenance\n";
  for (const auto& r : rows) {
    buf += r.key.joined();
    buf += '\t';
    buf += to_string(r.structural);
    buf += '\t';
    buf += to_string(r.functional.orientation);
    buf += '\t';
    buf += to_string(r.functional.subcategory);
    buf += '\t';
    buf += to_string(r.functional.provenance);
    buf += '\n';
  }
  out << buf;
}

}  // namespace lexbundle
