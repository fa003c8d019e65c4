#include "lexbundle_test/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "lexbundle/token.hpp"

namespace lexbundle::test {

std::string word_for(std::size_t index) {
  std::string w;
  do {
    w.insert(w.begin(), static_cast<char>('a' + index % 26));
    index /= 26;
  } while (index-- > 0);
  return w;
}

Document document_from_words(std::string id, const std::vector<std::string>& words) {
  Document d;
  d.id = std::move(id);
  d.tokens.reserve(words.size());
  for (const auto& w : words) d.tokens.push_back({w, classify_chars(w)});
  return d;
}

namespace {

std::string doc_id(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "d%05zu", i);
  return buf;
}

}  // namespace

Corpus corpus_from_texts(const std::vector<std::string>& texts) {
  std::vector<Document> docs;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    std::istringstream in(texts[i]);
    std::vector<std::string> words;
    for (std::string w; in >> w;) words.push_back(w);
    docs.push_back(document_from_words(doc_id(i), words));
  }
  return Corpus(std::move(docs));
}

Corpus random_corpus(std::mt19937_64& rng, const RandomCorpusSpec& spec) {
  std::uniform_int_distribution<std::size_t> doc_count(1, spec.max_documents);
  std::uniform_int_distribution<std::size_t> pick(0, spec.vocabulary - 1);
  const std::size_t docs = doc_count(rng);
  std::uniform_int_distribution<std::size_t> budget(0, spec.max_tokens);
  std::size_t remaining = budget(rng);
  std::vector<Document> out;
  for (std::size_t i = 0; i < docs; ++i) {
    std::uniform_int_distribution<std::size_t> len(0, remaining);
    const std::size_t n = i + 1 == docs ? remaining : len(rng);
    remaining -= n;
    std::vector<std::string> words(n);
    for (auto& w : words) w = word_for(pick(rng));
    out.push_back(document_from_words(doc_id(i), words));
  }
  return Corpus(std::move(out));
}

ZipfSampler::ZipfSampler(std::size_t types, double exponent) : cdf_(types) {
  double sum = 0.0;
  for (std::size_t r = 0; r < types; ++r) {
    sum += 1.0 / std::pow(static_cast<double>(r + 1), exponent);
    cdf_[r] = sum;
  }
  for (auto& c : cdf_) c /= sum;
}

std::size_t ZipfSampler::operator()(std::mt19937_64& rng) const {
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
  return std::min(static_cast<std::size_t>(it - cdf_.begin()), cdf_.size() - 1);
}

Corpus zipf_corpus(std::size_t total_tokens, std::size_t types, std::size_t documents,
                   std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const ZipfSampler zipf(types);
  std::vector<std::string> vocab(types);
  for (std::size_t i = 0; i < types; ++i) vocab[i] = word_for(i);

  std::vector<Document> docs(documents);
  std::size_t remaining = total_tokens;
  for (std::size_t d = 0; d < documents; ++d) {
    const std::size_t n = remaining / (documents - d);
    remaining -= n;
    docs[d].id = doc_id(d);
    docs[d].tokens.reserve(n);
    for (std::size_t i = 0; i < n; ++i) docs[d].tokens.push_back({vocab[zipf(rng)], CharClass::word});
  }
  return Corpus(std::move(docs));
}

}  // namespace lexbundle::test
