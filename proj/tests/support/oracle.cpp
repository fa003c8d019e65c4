#include "lexbundle_test/oracle.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace lexbundle::test {

namespace {

std::vector<std::string> window(const Document& d, std::size_t at, int n) {
  std::vector<std::string> w;
  for (int i = 0; i < n; ++i) w.push_back(d.tokens[at + static_cast<std::size_t>(i)].surface);
  return w;
}

}  // namespace

OracleTable brute_force_counts(const Corpus& corpus, int n) {
  OracleTable table;
  for (const auto& doc : corpus.documents()) {
    std::set<std::vector<std::string>> seen;
    const auto len = doc.tokens.size();
    for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= len; ++i) {
      auto w = window(doc, i, n);
      auto& c = table[w];
      ++c.raw;
      if (seen.insert(std::move(w)).second) ++c.range;
    }
  }
  return table;
}

std::uint64_t expected_windows(const Corpus& corpus, int n) {
  std::uint64_t total = 0;
  for (const auto& doc : corpus.documents()) {
    const auto len = doc.tokens.size();
    if (len >= static_cast<std::size_t>(n)) total += len - static_cast<std::size_t>(n) + 1;
  }
  return total;
}

std::uint64_t occurrences(const std::vector<std::string>& key, const Corpus& corpus) {
  std::uint64_t hits = 0;
  const int n = static_cast<int>(key.size());
  for (const auto& doc : corpus.documents()) {
    for (std::size_t i = 0; i + key.size() <= doc.tokens.size(); ++i) {
      if (window(doc, i, n) == key) ++hits;
    }
  }
  return hits;
}

double oracle_mi(const std::vector<std::string>& key, const Corpus& corpus) {
  const int n = static_cast<int>(key.size());
  if (n == 1) return 0.0;
  const double n1 = static_cast<double>(expected_windows(corpus, 1));
  const double nn = static_cast<double>(expected_windows(corpus, n));
  const double joint = static_cast<double>(occurrences(key, corpus)) / nn;
  double independent = 1.0;
  for (const auto& w : key) {
    independent *= static_cast<double>(occurrences({w}, corpus)) / n1;
  }
  return std::log2(joint / independent);
}

std::string compare_with_oracle(const BundleTable& table, const Corpus& corpus, int n) {
  const auto oracle = brute_force_counts(corpus, n);
  std::ostringstream why;
  if (table.distinct(n) != oracle.size()) {
    why << "n=" << n << ": " << table.distinct(n) << " distinct keys, oracle has "
        << oracle.size();
    return why.str();
  }
  for (const auto& [words, count] : oracle) {
    const auto stats = table.find(NgramKey(words));
    if (!stats || stats->raw_freq != count.raw || stats->doc_range != count.range) {
      why << "n=" << n << " key '" << NgramKey(words).joined() << "': oracle raw "
          << count.raw << " range " << count.range;
      if (stats) why << ", table raw " << stats->raw_freq << " range " << stats->doc_range;
      return why.str();
    }
  }
  return {};
}

}  // namespace lexbundle::test
