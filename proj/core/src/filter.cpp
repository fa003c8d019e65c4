#include "lexbundle/filter.hpp"

#include <algorithm>
#include <cmath>
#include <array>
#include <istream>
#include <ostream>
#include <set>

#include <absl/container/flat_hash_map.h>
#include <absl/container/flat_hash_set.h>

#include "detail/table_impl.hpp"
#include "detail/utf8.hpp"
#include "lexbundle/error.hpp"

namespace lexbundle {

namespace {

constexpr std::array<std::string_view, 8> kReasonNames{
    "below_min_freq",   "below_min_range", "low_mi",      "fragment_of_larger",
    "ends_in_article",  "contains_numeric", "meaningless", "noise",
};

bool basic_latin_token_char(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '\'' || c == '-';
}

}  // namespace

std::string_view to_string(ExclusionReason r) {
  return kReasonNames[static_cast<std::size_t>(r)];
}

ExclusionReason parse_exclusion_reason(std::string_view s) {
  for (std::size_t i = 0; i < kReasonNames.size(); ++i) {
    if (kReasonNames[i] == s) return static_cast<ExclusionReason>(i);
  }
  throw ConfigError("unknown exclusion reason '" + std::string(s) + "'");
}

std::string_view to_string(VerdictStatus s) {
  return s == VerdictStatus::kept ? "kept" : "excluded";
}

void FilterConfig::validate() const {
  if (!(min_freq_per_million >= 0.0)) {
    throw ConfigError("min_freq_per_million must be non-negative");
  }
  if (min_mi && std::isnan(*min_mi)) throw ConfigError("min_mi must be a number");
  if (!(subsumption_ratio > 0.0 && subsumption_ratio <= 1.0)) {
    throw ConfigError("subsumption_ratio must be in (0, 1]");
  }
}

std::vector<NgramKey> read_stoplist(std::istream& in) {
  std::vector<NgramKey> keys;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line.front() == '#') {
      continue;
    }
    keys.push_back(NgramKey::parse(line));
  }
  return keys;
}

// ---------------------------------------------------------------------------
// Per-key checks

bool contains_numeric(const NgramKey& key) {
  return std::any_of(key.tokens().begin(), key.tokens().end(), [](const auto& t) {
    const CharClass c = classify_chars(t);
    return c == CharClass::numeric || c == CharClass::mixed;
  });
}

bool is_noise(const NgramKey& key) {
  bool all_single = true;
  for (const auto& t : key.tokens()) {
    if (classify_chars(t) == CharClass::symbol) return true;
    for (unsigned char c : t) {
      if (!basic_latin_token_char(c)) return true;
    }
    if (detail::codepoint_count(t) != 1) all_single = false;
  }
  return all_single;
}

bool ends_in_article(const NgramKey& key) {
  const auto& last = key.back();
  return last == "a" || last == "an" || last == "the";
}

bool is_meaningless(const NgramKey& key, const LexiconSet& lexicons) {
  for (const auto& t : key.tokens()) {
    if (lexicons.bibliographic_fragments.count(t)) return true;
    // A stray letter ("de bot t van els") rather than a one-letter word.
    if (detail::codepoint_count(t) == 1 && classify_chars(t) == CharClass::word &&
        !lexicons.one_letter_words.count(t)) {
      return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Fragment ratio, direct form

double fragment_occurrence_ratio(const NgramKey& fragment,
                                 std::span<const NgramKey> longer_kept,
                                 const Corpus& corpus) {
  const auto& frag = fragment.tokens();
  const std::size_t len = frag.size();
  auto matches = [](const std::vector<Token>& doc, std::size_t at,
                    const std::vector<std::string>& seq) {
    if (at + seq.size() > doc.size()) return false;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      if (doc[at + i].surface != seq[i]) return false;
    }
    return true;
  };

  std::uint64_t total = 0, inside = 0;
  for (const auto& doc : corpus.documents()) {
    // Spans [start, end) of every occurrence of a longer bundle.
    std::vector<std::pair<std::size_t, std::size_t>> spans;
    for (const auto& longer : longer_kept) {
      if (longer.tokens().size() <= len) continue;
      for (std::size_t q = 0; q < doc.tokens.size(); ++q) {
        if (matches(doc.tokens, q, longer.tokens())) {
          spans.emplace_back(q, q + longer.tokens().size());
        }
      }
    }
    for (std::size_t p = 0; p + len <= doc.tokens.size(); ++p) {
      if (!matches(doc.tokens, p, frag)) continue;
      ++total;
      const bool covered = std::any_of(spans.begin(), spans.end(), [&](const auto& s) {
        return s.first <= p && p + len <= s.second;
      });
      if (covered) ++inside;
    }
  }
  if (total == 0) {
    throw UndefinedStatisticError("'" + fragment.joined() + "' does not occur in the corpus");
  }
  return static_cast<double>(inside) / static_cast<double>(total);
}

// ---------------------------------------------------------------------------
// Cascade

namespace {

struct Reach {
  std::uint32_t end = 0;  // exclusive end of the covering window, 0 = none
  std::uint32_t start = 0;
  std::uint8_t len = 0;
};

class FragmentPass {
 public:
  FragmentPass(const TableImpl& impl, const Corpus& corpus,
               std::vector<FilterVerdict>& verdicts, double ratio)
      : impl_(impl), verdicts_(verdicts), ratio_(ratio),
        enc_(encode_corpus(corpus, impl.vocab)) {
    reach_.resize(enc_.documents.size());
    for (std::size_t d = 0; d < enc_.documents.size(); ++d) {
      reach_[d].assign(enc_.documents[d].size(), Reach{});
    }
  }

  /// Decides the fragment check for every still-kept key of length L, then
  /// records the surviving keys as cover for shorter tiers.
  template <int L>
  void run_tier(std::span<const std::size_t> tier, bool has_longer) {
    if (has_longer) judge<L>(tier);
    mark<L>(tier);
  }

 private:
  template <int L>
  IdKey<L> window(const std::vector<TokenId>& doc, std::size_t at) const {
    IdKey<L> k;
    std::copy_n(doc.begin() + at, L, k.begin());
    return k;
  }

  template <int L>
  void judge(std::span<const std::size_t> tier) {
    struct Tally {
      std::size_t verdict;
      std::uint64_t total = 0;
      std::uint64_t inside = 0;
      std::map<std::string, std::uint64_t> cover;
    };
    absl::flat_hash_map<IdKey<L>, Tally> candidates;
    for (std::size_t idx : tier) {
      if (!verdicts_[idx].kept()) continue;
      IdKey<L> ids;
      if (impl_.encode<L>(verdicts_[idx].key, ids)) candidates.emplace(ids, Tally{idx, 0, 0, {}});
    }
    if (candidates.empty()) return;

    for (std::size_t d = 0; d < enc_.documents.size(); ++d) {
      const auto& doc = enc_.documents[d];
      const auto& reach = reach_[d];
      Reach best;
      for (std::size_t p = 0; p < doc.size(); ++p) {
        if (reach[p].end > best.end) best = reach[p];
        if (p + L > doc.size()) continue;
        auto it = candidates.find(window<L>(doc, p));
        if (it == candidates.end()) continue;
        Tally& t = it->second;
        ++t.total;
        if (best.end >= p + L) {
          ++t.inside;
          ++t.cover[joined(doc, best.start, best.len)];
        }
      }
    }

    for (auto& [ids, t] : candidates) {
      if (t.total == 0 || t.inside == 0) continue;
      const double r = static_cast<double>(t.inside) / static_cast<double>(t.total);
      if (r < ratio_) continue;
      // Most frequent cover wins; std::map order breaks ties by key.
      auto best = t.cover.begin();
      for (auto it = t.cover.begin(); it != t.cover.end(); ++it) {
        if (it->second > best->second) best = it;
      }
      auto& v = verdicts_[t.verdict];
      v.status = VerdictStatus::excluded;
      v.reason = ExclusionReason::fragment_of_larger;
      v.evidence = best->first;
    }
  }

  template <int L>
  void mark(std::span<const std::size_t> tier) {
    absl::flat_hash_set<IdKey<L>> kept;
    for (std::size_t idx : tier) {
      if (!verdicts_[idx].kept()) continue;
      IdKey<L> ids;
      if (impl_.encode<L>(verdicts_[idx].key, ids)) kept.insert(ids);
    }
    if (kept.empty()) return;
    for (std::size_t d = 0; d < enc_.documents.size(); ++d) {
      const auto& doc = enc_.documents[d];
      auto& reach = reach_[d];
      for (std::size_t q = 0; q + L <= doc.size(); ++q) {
        if (!kept.contains(window<L>(doc, q))) continue;
        const auto end = static_cast<std::uint32_t>(q + L);
        if (end > reach[q].end) reach[q] = {end, static_cast<std::uint32_t>(q), L};
      }
    }
  }

  std::string joined(const std::vector<TokenId>& doc, std::size_t start,
                     std::size_t len) const {
    std::string out;
    for (std::size_t i = 0; i < len; ++i) {
      if (i) out.push_back(' ');
      out += impl_.vocab.word(doc[start + i]);
    }
    return out;
  }

  const TableImpl& impl_;
  std::vector<FilterVerdict>& verdicts_;
  double ratio_;
  EncodedCorpus enc_;
  std::vector<std::vector<Reach>> reach_;
};

void exclude(FilterVerdict& v, ExclusionReason r, std::string evidence = {}) {
  v.status = VerdictStatus::excluded;
  v.reason = r;
  v.evidence = std::move(evidence);
}

}  // namespace

std::vector<FilterVerdict> run_filters(const BundleTable& table,
                                       const MiScores* scores,
                                       const FilterConfig& config,
                                       const Corpus& corpus,
                                       const LexiconSet& lexicons) {
  config.validate();
  MiScores computed;
  if (config.min_mi && !scores) {
    computed = score_all(table);
    scores = &computed;
  }
  const std::set<NgramKey> stoplist(config.stoplist.begin(), config.stoplist.end());

  std::vector<FilterVerdict> verdicts;
  verdicts.reserve(table.size());
  std::array<std::vector<std::size_t>, kMaxOrder + 1> tiers;

  for (int n = table.n_min(); n <= table.n_max(); ++n) {
    for (auto& key : table.keys(n)) {
      const BundleStats stats = table.at(key);
      FilterVerdict v;
      v.key = std::move(key);
      if (stats.freq_per_million < config.min_freq_per_million) {
        exclude(v, ExclusionReason::below_min_freq);
      } else if (stats.doc_range < config.min_doc_range) {
        exclude(v, ExclusionReason::below_min_range);
      } else if (config.min_mi && n >= 2 && [&] {
                   auto it = scores->find(v.key);
                   if (it == scores->end()) {
                     throw PrerequisiteError("no MI score for '" + v.key.joined() + "'");
                   }
                   return it->second < *config.min_mi;
                 }()) {
        exclude(v, ExclusionReason::low_mi, format_fixed(scores->at(v.key), 6));
      } else if (is_noise(v.key)) {
        exclude(v, ExclusionReason::noise);
      } else if (contains_numeric(v.key)) {
        exclude(v, ExclusionReason::contains_numeric);
      } else if (is_meaningless(v.key, lexicons)) {
        exclude(v, ExclusionReason::meaningless);
      } else if (stoplist.count(v.key)) {
        exclude(v, ExclusionReason::meaningless, "stoplist");
      } else if (config.apply_article_rule && ends_in_article(v.key)) {
        exclude(v, ExclusionReason::ends_in_article);
      }
      tiers[n].push_back(verdicts.size());
      verdicts.push_back(std::move(v));
    }
  }

  FragmentPass pass(table.impl(), corpus, verdicts, config.subsumption_ratio);
  for (int n = table.n_max(); n >= table.n_min(); --n) {
    const bool has_longer = n < table.n_max();
    TableImpl::dispatch(n, [&](auto c) {
      pass.run_tier<decltype(c)::value>(tiers[n], has_longer);
    });
  }
  return verdicts;
}

// ---------------------------------------------------------------------------
// Ledger

void write_ledger_tsv(std::ostream& out, std::span<const FilterVerdict> verdicts) {
  std::string buf = "ngram\tstatus\treason\tevidence\n";
  for (const auto& v : verdicts) {
    buf += v.key.joined();
    buf += '\t';
    buf += to_string(v.status);
    buf += '\t';
    if (v.reason) buf += to_string(*v.reason);
    buf += '\t';
    buf += v.evidence;
    buf += '\n';
  }
  out << buf;
}

std::vector<FilterVerdict> read_ledger_tsv(std::istream& in) {
  std::vector<FilterVerdict> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (lineno == 1 && line.rfind("ngram\t", 0) == 0) continue;
    std::vector<std::string> f;
    std::size_t start = 0;
    for (std::size_t tab; (tab = line.find('\t', start)) != std::string::npos;) {
      f.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    f.push_back(line.substr(start));
    if (f.size() != 4) {
      throw ConfigError("ledger line " + std::to_string(lineno) + ": expected 4 columns");
    }
    FilterVerdict v;
    v.key = NgramKey::parse(f[0]);
    if (f[1] == "kept") {
      v.status = VerdictStatus::kept;
    } else if (f[1] == "excluded") {
      v.status = VerdictStatus::excluded;
      v.reason = parse_exclusion_reason(f[2]);
    } else {
      throw ConfigError("ledger line " + std::to_string(lineno) + ": bad status '" +
                        f[1] + "'");
    }
    v.evidence = f[3];
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<NgramKey> kept_keys(std::span<const FilterVerdict> verdicts) {
  std::vector<NgramKey> out;
  for (const auto& v : verdicts) {
    if (v.kept()) out.push_back(v.key);
  }
  return out;
}

std::map<ExclusionReason, std::size_t> reason_counts(
    std::span<const FilterVerdict> verdicts) {
  std::map<ExclusionReason, std::size_t> counts;
  for (const auto& v : verdicts) {
    if (v.reason) ++counts[*v.reason];
  }
  return counts;
}

}  // namespace lexbundle
