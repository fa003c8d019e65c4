#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lexbundle/corpus.hpp"

namespace lexbundle {

inline constexpr int kMaxOrder = 5;

/// An ordered sequence of 1 to 5 token surfaces.
class NgramKey {
 public:
  NgramKey() = default;
  /// Throws ConfigError on an empty or over-long sequence, or on a token
  /// that is empty or contains whitespace.
  explicit NgramKey(std::vector<std::string> tokens);

  /// Parses a space-separated bundle such as "in order to".
  static NgramKey parse(std::string_view joined);

  const std::vector<std::string>& tokens() const { return tokens_; }
  int size() const { return static_cast<int>(tokens_.size()); }
  const std::string& operator[](std::size_t i) const { return tokens_[i]; }
  const std::string& back() const { return tokens_.back(); }

  std::string joined() const;

  friend auto operator<=>(const NgramKey&, const NgramKey&) = default;
  friend bool operator==(const NgramKey&, const NgramKey&) = default;

 private:
  std::vector<std::string> tokens_;
};

struct BundleStats {
  std::uint64_t raw_freq = 0;
  std::uint64_t doc_range = 0;
  double freq_per_million = 0.0;

  friend bool operator==(const BundleStats&, const BundleStats&) = default;
};

/// Corpus-level totals persisted next to an exported table so that a table
/// read back from disk supports the same statistics as a freshly counted one.
struct TableSummary {
  int n_min = 1;
  int n_max = kMaxOrder;
  std::uint64_t total_tokens = 0;
  std::uint64_t documents = 0;
  /// windows[n] = number of n-length windows in the corpus, index 0 unused.
  std::array<std::uint64_t, kMaxOrder + 1> windows{};
};

/// N-gram counts with document range for every length in [n_min, n_max].
class BundleTable {
 public:
  struct Impl;

  BundleTable();
  /// Throws ConfigError unless 1 <= n_min <= n_max <= 5.
  BundleTable(int n_min, int n_max);
  BundleTable(const BundleTable& other);
  BundleTable(BundleTable&&) noexcept;
  BundleTable& operator=(const BundleTable& other);
  BundleTable& operator=(BundleTable&&) noexcept;
  ~BundleTable();

  int n_min() const;
  int n_max() const;
  std::uint64_t corpus_total_tokens() const;
  std::uint64_t document_count() const;
  /// Total number of n-length windows, i.e. sum over documents of
  /// max(0, len - n + 1). Zero for lengths outside the counted range.
  std::uint64_t window_total(int n) const;
  TableSummary summary() const;

  std::size_t size() const;
  std::size_t distinct(int n) const;

  bool contains(const NgramKey& key) const;
  std::optional<BundleStats> find(const NgramKey& key) const;
  /// Throws ConfigError when the key is absent.
  BundleStats at(const NgramKey& key) const;

  /// Every entry, ordered by (length, descending raw_freq, key).
  std::vector<std::pair<NgramKey, BundleStats>> entries() const;
  /// Keys of one length in ascending lexicographic order.
  std::vector<NgramKey> keys(int n) const;

  /// Adds the counts of a table built from a disjoint set of documents.
  /// Frequencies, ranges, token and window totals all add. The n ranges
  /// must match.
  void merge(const BundleTable& other);

  /// Adds one occurrence record directly. Used when reading persisted
  /// tables; counting goes through count_ngrams.
  void insert(const NgramKey& key, std::uint64_t raw_freq,
              std::uint64_t doc_range);
  void set_summary(const TableSummary& summary);

  Impl& impl() { return *impl_; }
  const Impl& impl() const { return *impl_; }

 private:
  std::unique_ptr<Impl> impl_;
};

/// Counts every contiguous window of each length in [n_min, n_max], with
/// overlaps, never crossing a document boundary. `threads` > 1 counts
/// shards of documents concurrently; the result does not depend on it.
BundleTable count_ngrams(const Corpus& corpus, int n_min = 1,
                         int n_max = kMaxOrder, unsigned threads = 1);

/// Number of distinct selected bundles per length. Throws ConfigError if a
/// selected key is not in the table.
std::map<int, std::size_t> size_distribution(const BundleTable& table,
                                             std::span<const NgramKey> selected);

/// Token-occurrence mass of the selected bundles, sum(raw_freq * length),
/// over the corpus token count. Duplicate selections count once.
/// Throws UndefinedStatisticError on an empty corpus.
double coverage_stat(const BundleTable& table,
                     std::span<const NgramKey> selected, const Corpus& corpus);
/// Same, using the token count recorded in the table.
double coverage_stat(const BundleTable& table,
                     std::span<const NgramKey> selected);

/// The k most frequent bundles, optionally of a single length. Ties are
/// broken by ascending key.
std::vector<std::pair<NgramKey, BundleStats>> top_k(
    const BundleTable& table, std::size_t k,
    std::optional<int> length = std::nullopt);

/// TSV export: ngram, n, raw_freq, per_million, doc_range; sorted by
/// (n, -raw_freq, ngram). Written with a header row.
void write_table_tsv(std::ostream& out, const BundleTable& table);
/// Writes only the given keys, in the same order and format.
void write_table_tsv(std::ostream& out, const BundleTable& table,
                     std::span<const NgramKey> selected);
/// Reads a table written by write_table_tsv. `summary` supplies the totals
/// that the TSV does not carry.
BundleTable read_table_tsv(std::istream& in, const TableSummary& summary);

/// key<TAB>value lines: n_min, n_max, total_tokens, documents, windows_<n>.
void write_summary_tsv(std::ostream& out, const TableSummary& summary);
TableSummary read_summary_tsv(std::istream& in);

/// Formats a value with a fixed number of decimals, locale-independent.
std::string format_fixed(double value, int decimals);

}  // namespace lexbundle
