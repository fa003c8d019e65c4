#include "lexbundle/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>
#include <thread>

#include "lexbundle/error.hpp"

namespace lexbundle {

std::string_view to_string(SourceKind k) {
  switch (k) {
    case SourceKind::book: return "book";
    case SourceKind::journal: return "journal";
    case SourceKind::thesis: return "thesis";
    case SourceKind::unknown: return "unknown";
  }
  return "unknown";
}

SourceKind parse_source_kind(std::string_view s) {
  std::string lower(s);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "book") return SourceKind::book;
  if (lower == "journal") return SourceKind::journal;
  if (lower == "thesis") return SourceKind::thesis;
  if (lower == "unknown") return SourceKind::unknown;
  throw ConfigError("unknown source kind '" + std::string(s) + "'");
}

Corpus::Corpus(std::vector<Document> documents)
    : documents_(std::move(documents)) {
  std::sort(documents_.begin(), documents_.end(),
            [](const Document& a, const Document& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < documents_.size(); ++i) {
    if (documents_[i].id == documents_[i - 1].id) {
      throw ConfigError("duplicate document id '" + documents_[i].id + "'");
    }
  }
  for (const auto& d : documents_) total_tokens_ += d.tokens.size();
}

SourceKindMap read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest " + path.string());
  SourceKindMap kinds;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                        ": expected filename<TAB>kind");
    }
    kinds[line.substr(0, tab)] = parse_source_kind(line.substr(tab + 1));
  }
  return kinds;
}

Document make_document(std::string id, std::string_view text, SourceKind kind,
                       double noise_threshold) {
  Document doc;
  doc.id = std::move(id);
  doc.source_kind = kind;
  doc.tokens = tokenize(strip_noise_lines(text, noise_threshold));
  return doc;
}

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("cannot read " + path.string());
  return text;
}

SourceKind lookup_kind(const SourceKindMap& kinds,
                       const std::filesystem::path& path) {
  if (auto it = kinds.find(path.filename().string()); it != kinds.end()) {
    return it->second;
  }
  if (auto it = kinds.find(path.stem().string()); it != kinds.end()) {
    return it->second;
  }
  return SourceKind::unknown;
}

}  // namespace

Corpus load_corpus(std::span<const std::filesystem::path> paths,
                   const SourceKindMap& kinds, const LoadOptions& options) {
  std::vector<Document> docs(paths.size());
  std::vector<std::exception_ptr> errors(paths.size());

  auto load_one = [&](std::size_t i) {
    try {
      const auto& path = paths[i];
      if (std::filesystem::is_directory(path)) {
        throw IoError("cannot read " + path.string() + ": is a directory");
      }
      const std::string text = read_file(path);
      if (!is_valid_utf8(text)) {
        throw DecodeError(path.string() + " is not valid UTF-8 text");
      }
      docs[i] = make_document(path.stem().string(), text,
                              lookup_kind(kinds, path), options.noise_threshold);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  const unsigned threads =
      std::max(1u, std::min<unsigned>(options.threads, paths.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < paths.size(); ++i) load_one(i);
  } else {
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&, t] {
        for (std::size_t i = t; i < paths.size(); i += threads) load_one(i);
      });
    }
  }

  // Report the first failure in input order.
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return Corpus(std::move(docs));
}

}  // namespace lexbundle
