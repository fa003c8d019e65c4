#include "lexbundle/lexicon.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <istream>

#include "lexbundle/error.hpp"

namespace lexbundle {

// ---------------------------------------------------------------------------
// Category names

namespace {

constexpr std::array<std::string_view, kStructuralCategoryCount> kStructuralNames{
    "np_of_fragment",   "np_other_postmodifier", "pp_embedded_of",
    "pp_other",         "anticipatory_it",       "passive_vp_pp",
    "copula_be_np_adj", "vp_that_clause",        "verb_adj_to_clause",
    "adverbial_clause", "pronoun_np_be",         "other_expressions",
};

constexpr std::array<std::string_view, 3> kOrientationNames{"research", "text",
                                                             "participant"};

constexpr std::array<std::string_view, kSubcategoryCount> kSubcategoryNames{
    "location",   "procedure",   "quantification", "description",
    "topic",      "transition",  "resultative",    "structuring",
    "framing",    "stance",      "engagement",
};

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

template <class Enum, std::size_t N>
Enum parse_name(const std::array<std::string_view, N>& names, std::string_view s,
                std::string_view what) {
  const std::string l = lower(s);
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == l) return static_cast<Enum>(i);
  }
  throw ConfigError("unknown " + std::string(what) + " '" + std::string(s) + "'");
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

Orientation orientation_of(Subcategory s) {
  switch (s) {
    case Subcategory::location:
    case Subcategory::procedure:
    case Subcategory::quantification:
    case Subcategory::description:
    case Subcategory::topic:
      return Orientation::research;
    case Subcategory::transition:
    case Subcategory::resultative:
    case Subcategory::structuring:
    case Subcategory::framing:
      return Orientation::text;
    case Subcategory::stance:
    case Subcategory::engagement:
      return Orientation::participant;
  }
  return Orientation::text;
}

std::string_view to_string(StructuralCategory c) {
  return kStructuralNames[static_cast<std::size_t>(c)];
}
std::string_view to_string(Orientation o) {
  return kOrientationNames[static_cast<std::size_t>(o)];
}
std::string_view to_string(Subcategory s) {
  return kSubcategoryNames[static_cast<std::size_t>(s)];
}
std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::gold_lookup: return "gold_lookup";
    case Provenance::pattern: return "pattern";
    case Provenance::unknown: return "unknown";
  }
  return "unknown";
}

StructuralCategory parse_structural(std::string_view s) {
  return parse_name<StructuralCategory>(kStructuralNames, s, "structural category");
}
Orientation parse_orientation(std::string_view s) {
  return parse_name<Orientation>(kOrientationNames, s, "orientation");
}
Subcategory parse_subcategory(std::string_view s) {
  return parse_name<Subcategory>(kSubcategoryNames, s, "subcategory");
}

// ---------------------------------------------------------------------------
// LexiconSet

namespace {

struct SetBinding {
  std::string_view name;
  LexiconSet::WordSet LexiconSet::*member;
};

constexpr std::array<SetBinding, 15> kBindings{{
    {"articles", &LexiconSet::articles},
    {"determiners", &LexiconSet::determiners},
    {"prepositions", &LexiconSet::prepositions},
    {"pronouns", &LexiconSet::pronouns},
    {"copula_forms", &LexiconSet::copula_forms},
    {"do_forms", &LexiconSet::do_forms},
    {"modal_verbs", &LexiconSet::modal_verbs},
    {"common_verbs", &LexiconSet::common_verbs},
    {"irregular_participles", &LexiconSet::irregular_participles},
    {"to_clause_adjectives", &LexiconSet::to_clause_adjectives},
    {"subordinators", &LexiconSet::subordinators},
    {"conjunctions", &LexiconSet::conjunctions},
    {"quantity_nouns", &LexiconSet::quantity_nouns},
    {"bibliographic_fragments", &LexiconSet::bibliographic_fragments},
    {"one_letter_words", &LexiconSet::one_letter_words},
}};

constexpr std::string_view kPostmodifierFile = "postmodifier_markers";
constexpr std::string_view kGoldFile = "functional_gold.tsv";

std::ifstream open_required(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("missing lexicon file " + path.string());
  return in;
}

/// Non-empty, non-comment lines, trimmed and lowercased.
std::vector<std::string> read_entries(std::istream& in) {
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    out.push_back(lower(t));
  }
  return out;
}

}  // namespace

const std::vector<std::string_view>& LexiconSet::word_set_names() {
  static const std::vector<std::string_view> names = [] {
    std::vector<std::string_view> v;
    for (const auto& b : kBindings) v.push_back(b.name);
    v.push_back(kPostmodifierFile);
    return v;
  }();
  return names;
}

void read_gold_table(std::istream& in, LexiconSet& into) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (t.rfind("bundle\torientation", 0) == 0) continue;
    const auto tab1 = t.find('\t');
    const auto tab2 = tab1 == std::string_view::npos ? tab1 : t.find('\t', tab1 + 1);
    if (tab2 == std::string_view::npos) {
      throw ConfigError("gold table line " + std::to_string(lineno) +
                        ": expected bundle<TAB>orientation<TAB>subcategory");
    }
    const NgramKey key = NgramKey::parse(lower(t.substr(0, tab1)));
    const Orientation o = parse_orientation(trim(t.substr(tab1 + 1, tab2 - tab1 - 1)));
    const Subcategory s = parse_subcategory(trim(t.substr(tab2 + 1)));
    if (orientation_of(s) != o) {
      throw ConfigError("gold table line " + std::to_string(lineno) + ": subcategory " +
                        std::string(to_string(s)) + " does not belong to " +
                        std::string(to_string(o)));
    }
    if (!into.gold.emplace(key, GoldLabel{o, s}).second) {
      into.gold_duplicates.push_back(key.joined());
    }
  }
}

LexiconSet LexiconSet::load(const std::filesystem::path& dir) {
  LexiconSet lex;
  for (const auto& b : kBindings) {
    auto in = open_required(dir / (std::string(b.name) + ".txt"));
    for (auto& e : read_entries(in)) (lex.*b.member).insert(std::move(e));
  }
  {
    auto in = open_required(dir / (std::string(kPostmodifierFile) + ".txt"));
    for (const auto& e : read_entries(in)) {
      lex.postmodifier_markers.push_back(NgramKey::parse(e));
    }
  }
  {
    auto in = open_required(dir / kGoldFile);
    read_gold_table(in, lex);
  }
  lex.validate();
  return lex;
}

void LexiconSet::validate() const {
  auto disjoint = [](const WordSet& a, const WordSet& b, std::string_view an,
                     std::string_view bn) {
    for (const auto& w : a) {
      if (b.count(w)) {
        throw ConfigError("lexicon sets " + std::string(an) + " and " +
                          std::string(bn) + " both contain '" + w + "'");
      }
    }
  };
  disjoint(articles, prepositions, "articles", "prepositions");
  disjoint(articles, pronouns, "articles", "pronouns");
  disjoint(copula_forms, modal_verbs, "copula_forms", "modal_verbs");
}

bool LexiconSet::is_participle(std::string_view word) const {
  if (irregular_participles.count(std::string(word))) return true;
  return word.size() >= 5 && word.substr(word.size() - 2) == "ed";
}

bool LexiconSet::is_verb(std::string_view word) const {
  const std::string w(word);
  return common_verbs.count(w) || copula_forms.count(w) || do_forms.count(w) ||
         is_participle(word);
}

bool LexiconSet::is_closed_class(std::string_view word) const {
  const std::string w(word);
  for (const auto& b : kBindings) {
    if (b.member == &LexiconSet::quantity_nouns ||
        b.member == &LexiconSet::bibliographic_fragments ||
        b.member == &LexiconSet::one_letter_words) {
      continue;
    }
    if ((this->*b.member).count(w)) return true;
  }
  return false;
}

}  // namespace lexbundle
