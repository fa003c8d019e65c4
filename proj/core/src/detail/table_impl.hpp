#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include <absl/container/flat_hash_map.h>
#include <absl/strings/string_view.h>

#include "lexbundle/error.hpp"
#include "lexbundle/ngram.hpp"

namespace lexbundle {

using TokenId = std::uint32_t;
inline constexpr TokenId kNoToken = std::numeric_limits<TokenId>::max();

template <int N>
using IdKey = std::array<TokenId, N>;

struct Counter {
  std::uint32_t raw = 0;
  std::uint32_t range = 0;
  std::uint32_t last_doc = std::numeric_limits<std::uint32_t>::max();
};

template <int N>
using CountMap = absl::flat_hash_map<IdKey<N>, Counter>;

/// Interned surfaces; ids are assigned in first-seen order.
class Vocabulary {
 public:
  TokenId intern(std::string_view surface) {
    auto [it, inserted] =
        ids_.try_emplace(std::string(surface), static_cast<TokenId>(words_.size()));
    if (inserted) words_.push_back(it->first);
    return it->second;
  }
  TokenId lookup(std::string_view surface) const {
    auto it = ids_.find(absl::string_view(surface.data(), surface.size()));
    return it == ids_.end() ? kNoToken : it->second;
  }
  const std::string& word(TokenId id) const { return words_[id]; }
  std::size_t size() const { return words_.size(); }

 private:
  absl::flat_hash_map<std::string, TokenId> ids_;
  std::vector<std::string> words_;
};

struct BundleTable::Impl {
  int n_min = 1;
  int n_max = kMaxOrder;
  std::uint64_t total_tokens = 0;
  std::uint64_t documents = 0;
  std::array<std::uint64_t, kMaxOrder + 1> windows{};
  Vocabulary vocab;
  std::tuple<CountMap<1>, CountMap<2>, CountMap<3>, CountMap<4>, CountMap<5>>
      maps;

  template <int N>
  CountMap<N>& map() { return std::get<N - 1>(maps); }
  template <int N>
  const CountMap<N>& map() const { return std::get<N - 1>(maps); }

  /// Calls f(std::integral_constant<int, N>{}) for a runtime length n.
  template <class F>
  static decltype(auto) dispatch(int n, F&& f) {
    switch (n) {
      case 1: return f(std::integral_constant<int, 1>{});
      case 2: return f(std::integral_constant<int, 2>{});
      case 3: return f(std::integral_constant<int, 3>{});
      case 4: return f(std::integral_constant<int, 4>{});
      case 5: return f(std::integral_constant<int, 5>{});
      default: throw ConfigError("n-gram length out of range: " + std::to_string(n));
    }
  }

  /// Encodes a key with this table's vocabulary. Returns false if any token
  /// is unknown (the key cannot be in the table).
  template <int N>
  bool encode(const NgramKey& key, IdKey<N>& out) const {
    for (int i = 0; i < N; ++i) {
      out[i] = vocab.lookup(key[i]);
      if (out[i] == kNoToken) return false;
    }
    return true;
  }

  template <int N>
  NgramKey decode(const IdKey<N>& ids) const {
    std::vector<std::string> tokens;
    tokens.reserve(N);
    for (TokenId id : ids) tokens.push_back(vocab.word(id));
    return NgramKey(std::move(tokens));
  }

  template <int N>
  bool less(const IdKey<N>& a, const IdKey<N>& b) const {
    for (int i = 0; i < N; ++i) {
      if (a[i] == b[i]) continue;
      return vocab.word(a[i]) < vocab.word(b[i]);
    }
    return false;
  }

  double per_million(std::uint64_t raw) const {
    if (total_tokens == 0) return 0.0;
    return static_cast<double>(raw) * 1e6 / static_cast<double>(total_tokens);
  }

  BundleStats stats(const Counter& c) const {
    return {c.raw, c.range, per_million(c.raw)};
  }
};

using TableImpl = BundleTable::Impl;

/// A corpus re-expressed as token ids of one vocabulary.
struct EncodedCorpus {
  std::vector<std::vector<TokenId>> documents;
};

/// Encodes with lookup only; tokens absent from the vocabulary become
/// kNoToken.
EncodedCorpus encode_corpus(const Corpus& corpus, const Vocabulary& vocab);

}  // namespace lexbundle
