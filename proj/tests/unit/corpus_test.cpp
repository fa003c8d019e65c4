#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lexbundle/corpus.hpp"
#include "lexbundle/error.hpp"
#include "temp_dir.hpp"

namespace lexbundle {
namespace {

TEST(Corpus, TwoFilesAddUp) {
  test::TempDir dir;
  const auto a = dir.write("a.txt", "one two three four five six seven eight nine ten\n");
  const auto b = dir.write("b.txt",
                           "one two three four five six seven eight nine ten "
                           "eleven twelve thirteen fourteen fifteen\n");
  const std::vector<std::filesystem::path> paths{b, a};
  const Corpus c = load_corpus(paths);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.total_tokens(), 25u);
  EXPECT_EQ(c.documents()[0].id, "a");
  EXPECT_EQ(c.documents()[1].id, "b");
}

TEST(Corpus, EmptyFileIsKept) {
  test::TempDir dir;
  const std::vector<std::filesystem::path> paths{dir.write("empty.txt", "")};
  const Corpus c = load_corpus(paths);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c.total_tokens(), 0u);
}

TEST(Corpus, SymbolOnlyFileHasNoTokens) {
  test::TempDir dir;
  const std::vector<std::filesystem::path> paths{
      dir.write("sym.txt", "= + * / ()\nΣ ∑ %% ##\n12 = 3 + 9\n")};
  const Corpus c = load_corpus(paths);
  EXPECT_EQ(c.documents()[0].tokens.size(), 0u);
}

TEST(Corpus, MissingFileRaisesIoError) {
  const std::vector<std::filesystem::path> paths{"/nonexistent/file.txt"};
  try {
    load_corpus(paths);
    FAIL() << "expected IoError";
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/file.txt"), std::string::npos);
  }
}

TEST(Corpus, InvalidUtf8RaisesDecodeError) {
  test::TempDir dir;
  const std::vector<std::filesystem::path> paths{dir.write("bad.txt", "ok \xff\xfe bytes")};
  EXPECT_THROW(load_corpus(paths), DecodeError);
}

TEST(Corpus, DuplicateIdsRejected) {
  std::vector<Document> docs(2);
  docs[0].id = docs[1].id = "same";
  EXPECT_THROW(Corpus{std::move(docs)}, ConfigError);
}

TEST(Corpus, ManifestAssignsKinds) {
  test::TempDir dir;
  const auto a = dir.write("a.txt", "text one");
  const auto b = dir.write("b.txt", "text two");
  const auto m = dir.write("manifest.tsv", "# kinds\na.txt\tbook\nb\tthesis\n");
  const std::vector<std::filesystem::path> paths{a, b};
  const Corpus c = load_corpus(paths, read_manifest(m));
  EXPECT_EQ(c.documents()[0].source_kind, SourceKind::book);
  EXPECT_EQ(c.documents()[1].source_kind, SourceKind::thesis);
}

TEST(Corpus, ManifestRejectsUnknownKind) {
  test::TempDir dir;
  const auto m = dir.write("manifest.tsv", "a.txt\tpamphlet\n");
  EXPECT_THROW(read_manifest(m), ConfigError);
}

TEST(Corpus, ParallelLoadMatchesSerial) {
  test::TempDir dir;
  std::vector<std::filesystem::path> paths;
  for (int i = 0; i < 12; ++i) {
    std::ostringstream text;
    for (int j = 0; j <= i; ++j) text << "word" << char('a' + j) << " and more text\n";
    paths.push_back(dir.write("f" + std::to_string(i) + ".txt", text.str()));
  }
  const Corpus serial = load_corpus(paths, {}, {kDefaultNoiseThreshold, 1});
  const Corpus parallel = load_corpus(paths, {}, {kDefaultNoiseThreshold, 4});
  ASSERT_EQ(serial.size(), parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    EXPECT_EQ(serial.documents()[i].id, parallel.documents()[i].id);
    EXPECT_EQ(serial.documents()[i].tokens, parallel.documents()[i].tokens);
  }
}

TEST(Corpus, TotalMatchesWhitespaceCountOfCleanedText) {
  const std::string text =
      "The results, as shown in 2019, were clear.\nx = Σ p(w)\nWe can't say more.\n";
  const Document d = make_document("d", text);
  std::string cleaned;
  for (char c : strip_noise_lines(text)) {
    const bool keep = std::isalnum(static_cast<unsigned char>(c)) || c == '\'';
    cleaned += keep ? c : ' ';
  }
  std::istringstream in(cleaned);
  std::size_t words = 0;
  for (std::string w; in >> w;) ++words;
  EXPECT_EQ(d.tokens.size(), words);
}

}  // namespace
}  // namespace lexbundle
