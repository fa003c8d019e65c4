#include "lexbundle/ngram.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "detail/table_impl.hpp"
#include "lexbundle/error.hpp"

namespace lexbundle {

// ---------------------------------------------------------------------------
// NgramKey

NgramKey::NgramKey(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  if (tokens_.empty() || tokens_.size() > static_cast<std::size_t>(kMaxOrder)) {
    throw ConfigError("n-gram must have 1 to 5 tokens, got " +
                      std::to_string(tokens_.size()));
  }
  for (const auto& t : tokens_) {
    if (t.empty() || t.find_first_of(" \t\r\n\v\f") != std::string::npos) {
      throw ConfigError("invalid n-gram token '" + t + "'");
    }
  }
}

NgramKey NgramKey::parse(std::string_view joined) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < joined.size()) {
    while (i < joined.size() && (joined[i] == ' ' || joined[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < joined.size() && joined[j] != ' ' && joined[j] != '\t') ++j;
    if (j > i) tokens.emplace_back(joined.substr(i, j - i));
    i = j;
  }
  return NgramKey(std::move(tokens));
}

std::string NgramKey::joined() const {
  std::string out;
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens_[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// BundleTable

namespace {

void check_range(int n_min, int n_max) {
  if (n_min < 1 || n_max > kMaxOrder || n_min > n_max) {
    throw ConfigError("invalid n range " + std::to_string(n_min) + ".." +
                      std::to_string(n_max) + " (need 1 <= nmin <= nmax <= 5)");
  }
}

}  // namespace

BundleTable::BundleTable() : impl_(std::make_unique<Impl>()) {}

BundleTable::BundleTable(int n_min, int n_max) : impl_(std::make_unique<Impl>()) {
  check_range(n_min, n_max);
  impl_->n_min = n_min;
  impl_->n_max = n_max;
}

BundleTable::BundleTable(const BundleTable& other)
    : impl_(std::make_unique<Impl>(*other.impl_)) {}
BundleTable::BundleTable(BundleTable&&) noexcept = default;
BundleTable& BundleTable::operator=(const BundleTable& other) {
  if (this != &other) impl_ = std::make_unique<Impl>(*other.impl_);
  return *this;
}
BundleTable& BundleTable::operator=(BundleTable&&) noexcept = default;
BundleTable::~BundleTable() = default;

int BundleTable::n_min() const { return impl_->n_min; }
int BundleTable::n_max() const { return impl_->n_max; }
std::uint64_t BundleTable::corpus_total_tokens() const { return impl_->total_tokens; }
std::uint64_t BundleTable::document_count() const { return impl_->documents; }

std::uint64_t BundleTable::window_total(int n) const {
  if (n < 1 || n > kMaxOrder) return 0;
  return impl_->windows[n];
}

TableSummary BundleTable::summary() const {
  return {impl_->n_min, impl_->n_max, impl_->total_tokens, impl_->documents,
          impl_->windows};
}

void BundleTable::set_summary(const TableSummary& s) {
  check_range(s.n_min, s.n_max);
  impl_->n_min = s.n_min;
  impl_->n_max = s.n_max;
  impl_->total_tokens = s.total_tokens;
  impl_->documents = s.documents;
  impl_->windows = s.windows;
}

std::size_t BundleTable::distinct(int n) const {
  if (n < 1 || n > kMaxOrder) return 0;
  return TableImpl::dispatch(n, [&](auto c) -> std::size_t {
    return impl_->map<decltype(c)::value>().size();
  });
}

std::size_t BundleTable::size() const {
  std::size_t total = 0;
  for (int n = 1; n <= kMaxOrder; ++n) total += distinct(n);
  return total;
}

std::optional<BundleStats> BundleTable::find(const NgramKey& key) const {
  if (key.size() < impl_->n_min || key.size() > impl_->n_max) return std::nullopt;
  return TableImpl::dispatch(key.size(), [&](auto c) -> std::optional<BundleStats> {
    constexpr int N = decltype(c)::value;
    IdKey<N> ids;
    if (!impl_->encode<N>(key, ids)) return std::nullopt;
    const auto& m = impl_->map<N>();
    auto it = m.find(ids);
    if (it == m.end()) return std::nullopt;
    return impl_->stats(it->second);
  });
}

bool BundleTable::contains(const NgramKey& key) const { return find(key).has_value(); }

BundleStats BundleTable::at(const NgramKey& key) const {
  auto s = find(key);
  if (!s) throw ConfigError("bundle '" + key.joined() + "' is not in the table");
  return *s;
}

namespace {

template <int N>
std::vector<const typename CountMap<N>::value_type*> sorted_entries(
    const BundleTable::Impl& impl) {
  const auto& m = impl.map<N>();
  std::vector<const typename CountMap<N>::value_type*> out;
  out.reserve(m.size());
  for (const auto& kv : m) out.push_back(&kv);
  std::sort(out.begin(), out.end(), [&](const auto* a, const auto* b) {
    if (a->second.raw != b->second.raw) return a->second.raw > b->second.raw;
    return impl.less<N>(a->first, b->first);
  });
  return out;
}

}  // namespace

std::vector<std::pair<NgramKey, BundleStats>> BundleTable::entries() const {
  std::vector<std::pair<NgramKey, BundleStats>> out;
  out.reserve(size());
  for (int n = impl_->n_min; n <= impl_->n_max; ++n) {
    TableImpl::dispatch(n, [&](auto c) {
      constexpr int N = decltype(c)::value;
      for (const auto* kv : sorted_entries<N>(*impl_)) {
        out.emplace_back(impl_->decode<N>(kv->first), impl_->stats(kv->second));
      }
    });
  }
  return out;
}

std::vector<NgramKey> BundleTable::keys(int n) const {
  std::vector<NgramKey> out;
  if (n < impl_->n_min || n > impl_->n_max) return out;
  TableImpl::dispatch(n, [&](auto c) {
    constexpr int N = decltype(c)::value;
    const auto& m = impl_->map<N>();
    std::vector<const IdKey<N>*> ids;
    ids.reserve(m.size());
    for (const auto& kv : m) ids.push_back(&kv.first);
    std::sort(ids.begin(), ids.end(),
              [&](const auto* a, const auto* b) { return impl_->less<N>(*a, *b); });
    out.reserve(ids.size());
    for (const auto* k : ids) out.push_back(impl_->decode<N>(*k));
  });
  return out;
}

void BundleTable::merge(const BundleTable& other) {
  if (other.impl_->n_min != impl_->n_min || other.impl_->n_max != impl_->n_max) {
    throw ConfigError("cannot merge tables with different n ranges");
  }
  const Impl& src = *other.impl_;
  std::vector<TokenId> remap(src.vocab.size());
  for (TokenId id = 0; id < src.vocab.size(); ++id) {
    remap[id] = impl_->vocab.intern(src.vocab.word(id));
  }
  for (int n = impl_->n_min; n <= impl_->n_max; ++n) {
    TableImpl::dispatch(n, [&](auto c) {
      constexpr int N = decltype(c)::value;
      auto& dst = impl_->map<N>();
      for (const auto& [ids, counter] : src.map<N>()) {
        IdKey<N> key;
        for (int i = 0; i < N; ++i) key[i] = remap[ids[i]];
        auto [it, inserted] = dst.try_emplace(key, counter);
        if (!inserted) {
          it->second.raw += counter.raw;
          it->second.range += counter.range;
        }
      }
    });
  }
  impl_->total_tokens += src.total_tokens;
  impl_->documents += src.documents;
  for (int n = 1; n <= kMaxOrder; ++n) impl_->windows[n] += src.windows[n];
}

void BundleTable::insert(const NgramKey& key, std::uint64_t raw_freq,
                         std::uint64_t doc_range) {
  if (key.size() < impl_->n_min || key.size() > impl_->n_max) {
    throw ConfigError("bundle '" + key.joined() + "' outside the table's n range");
  }
  if (raw_freq == 0 || doc_range == 0 || doc_range > raw_freq) {
    throw ConfigError("bundle '" + key.joined() +
                      "': need raw_freq >= doc_range >= 1");
  }
  TableImpl::dispatch(key.size(), [&](auto c) {
    constexpr int N = decltype(c)::value;
    IdKey<N> ids;
    for (int i = 0; i < N; ++i) ids[i] = impl_->vocab.intern(key[i]);
    Counter& counter = impl_->map<N>()[ids];
    counter.raw += static_cast<std::uint32_t>(raw_freq);
    counter.range += static_cast<std::uint32_t>(doc_range);
  });
}

// ---------------------------------------------------------------------------
// Counting

EncodedCorpus encode_corpus(const Corpus& corpus, const Vocabulary& vocab) {
  EncodedCorpus enc;
  enc.documents.reserve(corpus.size());
  for (const auto& doc : corpus.documents()) {
    auto& ids = enc.documents.emplace_back();
    ids.reserve(doc.tokens.size());
    for (const auto& t : doc.tokens) ids.push_back(vocab.lookup(t.surface));
  }
  return enc;
}

namespace {

using ShardMaps = std::tuple<CountMap<1>, CountMap<2>, CountMap<3>,
                             CountMap<4>, CountMap<5>>;

template <int N>
inline void count_window(CountMap<N>& m, const TokenId* at, std::uint32_t doc) {
  IdKey<N> key;
  std::copy_n(at, N, key.begin());
  Counter& c = m[key];
  ++c.raw;
  if (c.last_doc != doc) {
    c.last_doc = doc;
    ++c.range;
  }
}

/// Counts documents [first, last) in one pass over each document: every
/// position contributes one window per configured length.
void count_shard(const std::vector<std::vector<TokenId>>& docs, std::size_t first,
                 std::size_t last, int n_min, int n_max, ShardMaps& maps) {
  for (std::size_t d = first; d < last; ++d) {
    const auto& ids = docs[d];
    const std::size_t len = ids.size();
    const auto doc = static_cast<std::uint32_t>(d);
    for (std::size_t pos = 0; pos < len; ++pos) {
      const std::size_t room = len - pos;
      const TokenId* at = ids.data() + pos;
      if (n_min <= 1 && n_max >= 1) count_window<1>(std::get<0>(maps), at, doc);
      if (n_min <= 2 && n_max >= 2 && room >= 2) count_window<2>(std::get<1>(maps), at, doc);
      if (n_min <= 3 && n_max >= 3 && room >= 3) count_window<3>(std::get<2>(maps), at, doc);
      if (n_min <= 4 && n_max >= 4 && room >= 4) count_window<4>(std::get<3>(maps), at, doc);
      if (n_min <= 5 && n_max >= 5 && room >= 5) count_window<5>(std::get<4>(maps), at, doc);
    }
  }
}

template <int N>
void merge_into(CountMap<N>& dst, CountMap<N>& src) {
  if (dst.empty()) {
    dst.swap(src);
    return;
  }
  for (auto& [key, c] : src) {
    auto [it, inserted] = dst.try_emplace(key, c);
    if (!inserted) {
      it->second.raw += c.raw;
      it->second.range += c.range;
    }
  }
  CountMap<N>().swap(src);
}

}  // namespace

BundleTable count_ngrams(const Corpus& corpus, int n_min, int n_max,
                         unsigned threads) {
  BundleTable table(n_min, n_max);
  auto& impl = table.impl();

  EncodedCorpus enc;
  enc.documents.reserve(corpus.size());
  for (const auto& doc : corpus.documents()) {
    auto& ids = enc.documents.emplace_back();
    ids.reserve(doc.tokens.size());
    for (const auto& t : doc.tokens) ids.push_back(impl.vocab.intern(t.surface));
  }

  impl.total_tokens = corpus.total_tokens();
  impl.documents = corpus.size();
  for (const auto& ids : enc.documents) {
    for (int n = 1; n <= kMaxOrder; ++n) {
      if (n < n_min || n > n_max) continue;
      if (ids.size() >= static_cast<std::size_t>(n)) impl.windows[n] += ids.size() - n + 1;
    }
  }

  const std::size_t ndocs = enc.documents.size();
  const unsigned shards =
      static_cast<unsigned>(std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(ndocs, 1)));
  if (shards == 1) {
    count_shard(enc.documents, 0, ndocs, n_min, n_max, impl.maps);
    return table;
  }

  // Balance shards by token count; documents stay contiguous.
  std::vector<std::size_t> bounds{0};
  const std::uint64_t per_shard = (corpus.total_tokens() + shards - 1) / shards;
  std::uint64_t acc = 0;
  for (std::size_t d = 0; d < ndocs; ++d) {
    acc += enc.documents[d].size();
    if (acc >= per_shard * bounds.size() && bounds.size() < shards) {
      bounds.push_back(d + 1);
    }
  }
  if (bounds.back() != ndocs) bounds.push_back(ndocs);

  std::vector<ShardMaps> parts(bounds.size() - 1);
  {
    std::vector<std::jthread> workers;
    for (std::size_t s = 0; s + 1 < bounds.size(); ++s) {
      workers.emplace_back([&, s] {
        count_shard(enc.documents, bounds[s], bounds[s + 1], n_min, n_max, parts[s]);
      });
    }
  }
  for (auto& part : parts) {
    merge_into<1>(std::get<0>(impl.maps), std::get<0>(part));
    merge_into<2>(std::get<1>(impl.maps), std::get<1>(part));
    merge_into<3>(std::get<2>(impl.maps), std::get<2>(part));
    merge_into<4>(std::get<3>(impl.maps), std::get<3>(part));
    merge_into<5>(std::get<4>(impl.maps), std::get<4>(part));
  }
  return table;
}

// ---------------------------------------------------------------------------
// Statistics

namespace {

std::set<NgramKey> unique_selection(const BundleTable& table,
                                    std::span<const NgramKey> selected) {
  std::set<NgramKey> keys(selected.begin(), selected.end());
  for (const auto& k : keys) {
    if (!table.contains(k)) {
      throw ConfigError("selected bundle '" + k.joined() + "' is not in the table");
    }
  }
  return keys;
}

}  // namespace

std::map<int, std::size_t> size_distribution(const BundleTable& table,
                                             std::span<const NgramKey> selected) {
  std::map<int, std::size_t> dist;
  for (const auto& k : unique_selection(table, selected)) ++dist[k.size()];
  return dist;
}

double coverage_stat(const BundleTable& table, std::span<const NgramKey> selected,
                     const Corpus& corpus) {
  if (corpus.total_tokens() == 0) {
    throw UndefinedStatisticError("coverage is undefined for an empty corpus");
  }
  std::uint64_t mass = 0;
  for (const auto& k : unique_selection(table, selected)) {
    mass += table.at(k).raw_freq * static_cast<std::uint64_t>(k.size());
  }
  return static_cast<double>(mass) / static_cast<double>(corpus.total_tokens());
}

double coverage_stat(const BundleTable& table, std::span<const NgramKey> selected) {
  if (table.corpus_total_tokens() == 0) {
    throw UndefinedStatisticError("coverage is undefined for an empty corpus");
  }
  std::uint64_t mass = 0;
  for (const auto& k : unique_selection(table, selected)) {
    mass += table.at(k).raw_freq * static_cast<std::uint64_t>(k.size());
  }
  return static_cast<double>(mass) / static_cast<double>(table.corpus_total_tokens());
}

std::vector<std::pair<NgramKey, BundleStats>> top_k(const BundleTable& table,
                                                    std::size_t k,
                                                    std::optional<int> length) {
  std::vector<std::pair<NgramKey, BundleStats>> out;
  if (k == 0) return out;
  const auto& impl = table.impl();
  for (int n = impl.n_min; n <= impl.n_max; ++n) {
    if (length && *length != n) continue;
    TableImpl::dispatch(n, [&](auto c) {
      constexpr int N = decltype(c)::value;
      const auto& m = impl.map<N>();
      std::vector<const typename CountMap<N>::value_type*> cand;
      cand.reserve(m.size());
      for (const auto& kv : m) cand.push_back(&kv);
      auto better = [&](const auto* a, const auto* b) {
        if (a->second.raw != b->second.raw) return a->second.raw > b->second.raw;
        return impl.less<N>(a->first, b->first);
      };
      const std::size_t take = std::min(k, cand.size());
      std::partial_sort(cand.begin(), cand.begin() + take, cand.end(), better);
      for (std::size_t i = 0; i < take; ++i) {
        out.emplace_back(impl.decode<N>(cand[i]->first), impl.stats(cand[i]->second));
      }
    });
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second.raw_freq != b.second.raw_freq) return a.second.raw_freq > b.second.raw_freq;
    return a.first < b.first;
  });
  if (out.size() > k) out.resize(k);
  return out;
}

// ---------------------------------------------------------------------------
// Persistence

std::string format_fixed(double value, int decimals) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed,
                           decimals);
  return std::string(buf, res.ptr);
}

namespace {

constexpr std::string_view kTableHeader = "ngram\tn\traw_freq\tper_million\tdoc_range";

void append_row(std::string& buf, const NgramKey& key, const BundleStats& s) {
  buf += key.joined();
  buf += '\t';
  buf += std::to_string(key.size());
  buf += '\t';
  buf += std::to_string(s.raw_freq);
  buf += '\t';
  buf += format_fixed(s.freq_per_million, 6);
  buf += '\t';
  buf += std::to_string(s.doc_range);
  buf += '\n';
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::uint64_t parse_u64(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw ConfigError("malformed " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

void write_table_tsv(std::ostream& out, const BundleTable& table) {
  const auto& impl = table.impl();
  std::string buf(kTableHeader);
  buf += '\n';
  for (int n = impl.n_min; n <= impl.n_max; ++n) {
    TableImpl::dispatch(n, [&](auto c) {
      constexpr int N = decltype(c)::value;
      for (const auto* kv : sorted_entries<N>(impl)) {
        append_row(buf, impl.decode<N>(kv->first), impl.stats(kv->second));
        if (buf.size() > (1u << 20)) {
          out << buf;
          buf.clear();
        }
      }
    });
  }
  out << buf;
}

void write_table_tsv(std::ostream& out, const BundleTable& table,
                     std::span<const NgramKey> selected) {
  std::vector<std::pair<NgramKey, BundleStats>> rows;
  for (const auto& k : std::set<NgramKey>(selected.begin(), selected.end())) {
    rows.emplace_back(k, table.at(k));
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    if (a.second.raw_freq != b.second.raw_freq) return a.second.raw_freq > b.second.raw_freq;
    return a.first < b.first;
  });
  std::string buf(kTableHeader);
  buf += '\n';
  for (const auto& [k, s] : rows) append_row(buf, k, s);
  out << buf;
}

BundleTable read_table_tsv(std::istream& in, const TableSummary& summary) {
  BundleTable table(summary.n_min, summary.n_max);
  table.set_summary(summary);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (lineno == 1 && line.rfind("ngram\t", 0) == 0) continue;
    const auto f = split_tabs(line);
    if (f.size() != 5) {
      throw ConfigError("table line " + std::to_string(lineno) + ": expected 5 columns");
    }
    const NgramKey key = NgramKey::parse(f[0]);
    if (parse_u64(f[1], "n") != static_cast<std::uint64_t>(key.size())) {
      throw ConfigError("table line " + std::to_string(lineno) + ": n does not match ngram");
    }
    table.insert(key, parse_u64(f[2], "raw_freq"), parse_u64(f[4], "doc_range"));
  }
  return table;
}

void write_summary_tsv(std::ostream& out, const TableSummary& s) {
  out << "n_min\t" << s.n_min << '\n'
      << "n_max\t" << s.n_max << '\n'
      << "total_tokens\t" << s.total_tokens << '\n'
      << "documents\t" << s.documents << '\n';
  for (int n = 1; n <= kMaxOrder; ++n) {
    out << "windows_" << n << '\t' << s.windows[n] << '\n';
  }
}

TableSummary read_summary_tsv(std::istream& in) {
  TableSummary s;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto f = split_tabs(line);
    if (f.size() != 2) throw ConfigError("malformed summary line '" + line + "'");
    const auto key = f[0];
    const std::uint64_t v = parse_u64(f[1], key);
    if (key == "n_min") {
      s.n_min = static_cast<int>(v);
    } else if (key == "n_max") {
      s.n_max = static_cast<int>(v);
    } else if (key == "total_tokens") {
      s.total_tokens = v;
    } else if (key == "documents") {
      s.documents = v;
    } else if (key.size() == 9 && key.substr(0, 8) == "windows_" &&
               key[8] >= '1' && key[8] <= '5') {
      s.windows[key[8] - '0'] = v;
    }
    // Unknown keys are tolerated so the summary can carry extra fields.
  }
  check_range(s.n_min, s.n_max);
  return s;
}

}  // namespace lexbundle
