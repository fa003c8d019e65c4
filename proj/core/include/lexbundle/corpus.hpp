#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lexbundle/token.hpp"

namespace lexbundle {

enum class SourceKind : std::uint8_t { book, journal, thesis, unknown };

std::string_view to_string(SourceKind k);
SourceKind parse_source_kind(std::string_view s);  // throws ConfigError

struct Document {
  std::string id;
  SourceKind source_kind = SourceKind::unknown;
  std::vector<Token> tokens;
};

/// An ordered set of documents. Documents are kept sorted by id and ids
/// must be unique.
class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::vector<Document> documents);

  const std::vector<Document>& documents() const { return documents_; }
  std::size_t size() const { return documents_.size(); }
  std::size_t total_tokens() const { return total_tokens_; }

 private:
  std::vector<Document> documents_;
  std::size_t total_tokens_ = 0;
};

/// filename -> source kind, as read from a manifest.
using SourceKindMap = std::map<std::string, SourceKind, std::less<>>;

/// Reads a manifest with one `filename<TAB>kind` entry per line. Blank lines
/// and lines starting with '#' are ignored.
SourceKindMap read_manifest(const std::filesystem::path& path);

struct LoadOptions {
  double noise_threshold = kDefaultNoiseThreshold;
  unsigned threads = 1;
};

/// Cleans and tokenizes one document's text.
Document make_document(std::string id, std::string_view text,
                       SourceKind kind = SourceKind::unknown,
                       double noise_threshold = kDefaultNoiseThreshold);

/// Loads one document per file; the document id is the file stem. Source
/// kinds are looked up by file name, then by stem.
///
/// Throws IoError for unreadable files, DecodeError for files that are not
/// UTF-8, ConfigError when two files share a stem.
Corpus load_corpus(std::span<const std::filesystem::path> paths,
                   const SourceKindMap& kinds = {},
                   const LoadOptions& options = {});

}  // namespace lexbundle
