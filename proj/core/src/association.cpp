#include "lexbundle/association.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "detail/table_impl.hpp"
#include "lexbundle/error.hpp"

namespace lexbundle {

namespace {

void require_unigrams(const TableImpl& impl) {
  if (impl.n_min > 1) {
    throw PrerequisiteError(
        "mutual information needs unigram counts; recount with nmin=1");
  }
}

/// Scores an encoded key. Unigram counters are looked up in the same table.
template <int N>
double score_ids(const TableImpl& impl, const IdKey<N>& ids, std::uint32_t raw) {
  if constexpr (N == 1) {
    return 0.0;
  } else {
    const std::uint64_t windows = impl.windows[N];
    const std::uint64_t tokens = impl.windows[1];
    if (windows == 0 || tokens == 0) {
      throw UndefinedStatisticError("no windows of length " + std::to_string(N));
    }
    const auto& unigrams = impl.map<1>();
    double bits = std::log2(static_cast<double>(raw) / static_cast<double>(windows));
    for (TokenId id : ids) {
      auto it = unigrams.find(IdKey<1>{id});
      if (it == unigrams.end() || it->second.raw == 0) {
        throw PrerequisiteError("missing unigram count for '" + impl.vocab.word(id) +
                                "'; recount with nmin=1");
      }
      bits -= std::log2(static_cast<double>(it->second.raw) /
                        static_cast<double>(tokens));
    }
    return bits;
  }
}

}  // namespace

double mutual_information(const NgramKey& key, const BundleTable& table) {
  const auto& impl = table.impl();
  if (!table.contains(key)) {
    throw ConfigError("bundle '" + key.joined() + "' is not in the table");
  }
  if (key.size() == 1) return 0.0;
  require_unigrams(impl);
  return TableImpl::dispatch(key.size(), [&](auto c) -> double {
    constexpr int N = decltype(c)::value;
    IdKey<N> ids;
    impl.encode<N>(key, ids);
    return score_ids<N>(impl, ids, impl.map<N>().at(ids).raw);
  });
}

MiScores score_all(const BundleTable& table) {
  const auto& impl = table.impl();
  MiScores scores;
  if (impl.n_max < 2) return scores;
  require_unigrams(impl);
  for (int n = std::max(2, impl.n_min); n <= impl.n_max; ++n) {
    TableImpl::dispatch(n, [&](auto c) {
      constexpr int N = decltype(c)::value;
      for (const auto& [ids, counter] : impl.map<N>()) {
        scores.emplace(impl.decode<N>(ids), score_ids<N>(impl, ids, counter.raw));
      }
    });
  }
  return scores;
}

MiPartition apply_mi_threshold(const BundleTable& table, double min_mi) {
  MiPartition part;
  const MiScores scores = score_all(table);
  for (const auto& k : table.keys(1)) part.passing.push_back(k);
  for (const auto& [key, score] : scores) {
    if (score >= min_mi) {
      part.passing.push_back(key);
    } else {
      part.failing.emplace_back(key, score);
    }
  }
  std::sort(part.passing.begin(), part.passing.end());
  return part;
}

void write_mi_tsv(std::ostream& out, const MiScores& scores) {
  std::string buf = "ngram\tmi_bits\n";
  for (const auto& [key, score] : scores) {
    buf += key.joined();
    buf += '\t';
    buf += format_fixed(score, 6);
    buf += '\n';
  }
  out << buf;
}

}  // namespace lexbundle
