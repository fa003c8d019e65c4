#include "lexbundle/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "lexbundle/association.hpp"
#include "lexbundle/classify.hpp"
#include "lexbundle/corpus.hpp"
#include "lexbundle/error.hpp"
#include "lexbundle/lexicon.hpp"
#include "lexbundle/report.hpp"

#ifndef LEXBUNDLE_DEFAULT_LEXICON_DIR
#define LEXBUNDLE_DEFAULT_LEXICON_DIR "lexicons"
#endif

namespace lexbundle::cli {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kTableFile = "bundles.tsv";
constexpr std::string_view kSummaryFile = "summary.tsv";
constexpr std::string_view kLedgerFile = "ledger.tsv";
constexpr std::string_view kKeptFile = "kept.tsv";
constexpr std::string_view kMiFile = "mi.tsv";
constexpr std::string_view kClassificationFile = "classification.tsv";
constexpr std::string_view kHistogramFile = "histogram.tsv";

// ---------------------------------------------------------------------------
// Validation

void require_exists(const std::string& path, std::string_view what) {
  if (!fs::exists(path)) {
    throw ConfigError(std::string(what) + " not found: " + path);
  }
}

void validate(const RunConfig& cfg, bool needs_input) {
  if (cfg.n_min < 1 || cfg.n_max > kMaxOrder || cfg.n_min > cfg.n_max) {
    throw ConfigError("invalid n range " + std::to_string(cfg.n_min) + ".." +
                      std::to_string(cfg.n_max) + " (need 1 <= nmin <= nmax <= 5)");
  }
  if (needs_input && cfg.inputs.empty()) throw ConfigError("no --input given");
  for (const auto& p : cfg.inputs) require_exists(p, "input");
  if (!cfg.manifest.empty()) require_exists(cfg.manifest, "manifest");
  if (!cfg.stoplist.empty()) require_exists(cfg.stoplist, "stoplist");
  if (!cfg.from.empty()) require_exists(cfg.from, "directory");
  if (!cfg.kept.empty()) require_exists(cfg.kept, "kept list");
  if (cfg.threads == 0) throw ConfigError("--threads must be at least 1");
  if (cfg.noise_threshold < 0.0 || cfg.noise_threshold > 1.0) {
    throw ConfigError("--noise-threshold must be in [0, 1]");
  }
  cfg.filter.validate();
  parse_format(cfg.format);
}

void validate_lexicons(const RunConfig& cfg) {
  const fs::path dir = cfg.lexicons;
  require_exists(cfg.lexicons, "lexicon directory");
  for (auto name : LexiconSet::word_set_names()) {
    require_exists((dir / (std::string(name) + ".txt")).string(), "lexicon file");
  }
  require_exists((dir / "functional_gold.tsv").string(), "gold table");
}

// ---------------------------------------------------------------------------
// I/O helpers

std::vector<fs::path> expand_inputs(const std::vector<std::string>& inputs) {
  std::vector<fs::path> files;
  for (const auto& in : inputs) {
    if (fs::is_directory(in)) {
      std::vector<fs::path> found;
      std::error_code ec;
      for (const auto& entry : fs::directory_iterator(in, ec)) {
        if (entry.is_regular_file()) found.push_back(entry.path());
      }
      if (ec) throw IoError("cannot list " + in + ": " + ec.message());
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.emplace_back(in);
    }
  }
  return files;
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  body(out);
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  return in;
}

fs::path prepare_out(const RunConfig& cfg) {
  std::error_code ec;
  fs::create_directories(cfg.out, ec);
  if (ec || !fs::is_directory(cfg.out)) {
    throw IoError("cannot create output directory " + cfg.out);
  }
  return cfg.out;
}

/// Reads bundles from a kept list: either a table/ledger-style TSV (first
/// column) or plain lines. Header and '#' lines are skipped.
std::vector<NgramKey> read_kept(const fs::path& path) {
  auto in = open_input(path);
  std::vector<NgramKey> keys;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#' || line.rfind("ngram\t", 0) == 0) continue;
    keys.push_back(NgramKey::parse(line.substr(0, line.find('\t'))));
  }
  return keys;
}

// ---------------------------------------------------------------------------
// Pipeline stages

Corpus load(const RunConfig& cfg) {
  const auto files = expand_inputs(cfg.inputs);
  SourceKindMap kinds;
  if (!cfg.manifest.empty()) kinds = read_manifest(cfg.manifest);
  return load_corpus(files, kinds, {cfg.noise_threshold, cfg.threads});
}

struct FilterRun {
  std::vector<FilterVerdict> verdicts;
  std::optional<MiScores> scores;
};

FilterConfig filter_config(const RunConfig& cfg) {
  FilterConfig fc = cfg.filter;
  if (!cfg.stoplist.empty()) {
    auto in = open_input(cfg.stoplist);
    fc.stoplist = read_stoplist(in);
  }
  return fc;
}

FilterRun filter(const RunConfig& cfg, const Corpus& corpus, const BundleTable& table,
                 const LexiconSet& lexicons) {
  FilterRun run;
  if (cfg.filter.min_mi || cfg.mi_report) run.scores = score_all(table);
  run.verdicts = run_filters(table, run.scores ? &*run.scores : nullptr,
                             filter_config(cfg), corpus, lexicons);
  return run;
}

void write_extract_outputs(const fs::path& dir, const BundleTable& table) {
  write_file(dir / kTableFile, [&](std::ostream& o) { write_table_tsv(o, table); });
  write_file(dir / kSummaryFile, [&](std::ostream& o) { write_summary_tsv(o, table.summary()); });
}

Section run_summary(const BundleTable& table) {
  Section s{"summary", {"key", "value"}, {}};
  s.rows.push_back({"documents", std::to_string(table.document_count())});
  s.rows.push_back({"total_tokens", std::to_string(table.corpus_total_tokens())});
  for (int n = table.n_min(); n <= table.n_max(); ++n) {
    s.rows.push_back({"distinct_" + std::to_string(n), std::to_string(table.distinct(n))});
  }
  for (int n = table.n_min(); n <= table.n_max(); ++n) {
    s.rows.push_back({"windows_" + std::to_string(n), std::to_string(table.window_total(n))});
  }
  return s;
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_extract(const RunConfig& cfg, std::ostream& out) {
  validate(cfg, true);
  const Format format = parse_format(cfg.format);
  const Corpus corpus = load(cfg);
  const BundleTable table = count_ngrams(corpus, cfg.n_min, cfg.n_max, cfg.threads);
  const fs::path dir = prepare_out(cfg);
  write_extract_outputs(dir, table);
  const std::vector<Section> sections{run_summary(table)};
  render(out, sections, format);
  return kOk;
}

int cmd_filter(const RunConfig& cfg, std::ostream& out) {
  validate(cfg, true);
  validate_lexicons(cfg);
  const Format format = parse_format(cfg.format);
  const LexiconSet lexicons = LexiconSet::load(cfg.lexicons);
  const Corpus corpus = load(cfg);
  const BundleTable table = count_ngrams(corpus, cfg.n_min, cfg.n_max, cfg.threads);
  const FilterRun run = filter(cfg, corpus, table, lexicons);
  const auto kept = kept_keys(run.verdicts);

  const fs::path dir = prepare_out(cfg);
  write_extract_outputs(dir, table);
  write_file(dir / kLedgerFile, [&](std::ostream& o) { write_ledger_tsv(o, run.verdicts); });
  write_file(dir / kKeptFile, [&](std::ostream& o) { write_table_tsv(o, table, kept); });
  if (run.scores) {
    write_file(dir / kMiFile, [&](std::ostream& o) { write_mi_tsv(o, *run.scores); });
  }

  std::vector<Section> sections;
  sections.push_back({"filter", {"key", "value"},
                      {{"bundles", std::to_string(run.verdicts.size())},
                       {"kept", std::to_string(kept.size())},
                       {"excluded", std::to_string(run.verdicts.size() - kept.size())}}});
  Section reasons{"exclusions", {"reason", "count"}, {}};
  for (const auto& [reason, count] : reason_counts(run.verdicts)) {
    reasons.rows.push_back({std::string(to_string(reason)), std::to_string(count)});
  }
  sections.push_back(std::move(reasons));
  render(out, sections, format);
  return kOk;
}

/// Kept bundles for classify/report: --kept, else <from>/kept.tsv, else a
/// fresh filter run over --input.
std::vector<NgramKey> resolve_kept(const RunConfig& cfg, const Corpus* corpus,
                                   const BundleTable* table) {
  if (!cfg.kept.empty()) return read_kept(cfg.kept);
  if (!cfg.from.empty()) {
    const fs::path p = fs::path(cfg.from) / kKeptFile;
    if (!fs::exists(p)) throw ConfigError("kept list not found: " + p.string());
    return read_kept(p);
  }
  if (!corpus || !table) throw ConfigError("need --kept, --from or --input");
  validate_lexicons(cfg);
  const LexiconSet lexicons = LexiconSet::load(cfg.lexicons);
  return kept_keys(filter(cfg, *corpus, *table, lexicons).verdicts);
}

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
  validate(cfg, false);
  validate_lexicons(cfg);
  const Format format = parse_format(cfg.format);
  const LexiconSet lexicons = LexiconSet::load(cfg.lexicons);

  std::vector<NgramKey> kept;
  if (cfg.kept.empty() && cfg.from.empty()) {
    if (cfg.inputs.empty()) throw ConfigError("need --kept, --from or --input");
    const Corpus corpus = load(cfg);
    const BundleTable table = count_ngrams(corpus, cfg.n_min, cfg.n_max, cfg.threads);
    kept = resolve_kept(cfg, &corpus, &table);
  } else {
    kept = resolve_kept(cfg, nullptr, nullptr);
  }
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());

  std::vector<Classification> rows;
  std::vector<FunctionalCategory> functional;
  rows.reserve(kept.size());
  for (auto& key : kept) {
    const auto s = classify_structure(key, lexicons);
    const auto f = classify_function(key, lexicons);
    functional.push_back(f);
    rows.push_back({std::move(key), s, f});
  }
  const CategoryHistogram hist = category_histogram(functional);

  Section by_sub{"subcategories", {"orientation", "subcategory", "count"}, {}};
  for (int i = 0; i < kSubcategoryCount; ++i) {
    const auto s = static_cast<Subcategory>(i);
    by_sub.rows.push_back({std::string(to_string(orientation_of(s))),
                           std::string(to_string(s)), std::to_string(hist.count(s))});
  }
  Section by_orient{"orientations", {"orientation", "count"}, {}};
  for (auto o : {Orientation::research, Orientation::text, Orientation::participant}) {
    by_orient.rows.push_back({std::string(to_string(o)), std::to_string(hist.count(o))});
  }
  by_orient.rows.push_back({"total", std::to_string(hist.total)});
  const std::vector<Section> sections{by_sub, by_orient};

  const fs::path dir = prepare_out(cfg);
  write_file(dir / kClassificationFile,
             [&](std::ostream& o) { write_classification_tsv(o, rows); });
  write_file(dir / kHistogramFile,
             [&](std::ostream& o) { render(o, sections, Format::tsv); });
  render(out, sections, format);
  return kOk;
}

int cmd_report(const RunConfig& cfg, std::ostream& out) {
  validate(cfg, false);
  const Format format = parse_format(cfg.format);

  BundleTable table;
  std::vector<NgramKey> kept;
  if (!cfg.from.empty()) {
    const fs::path dir = cfg.from;
    for (auto f : {kTableFile, kSummaryFile}) {
      if (!fs::exists(dir / f)) throw ConfigError("missing " + (dir / f).string());
    }
    auto sin = open_input(dir / kSummaryFile);
    const TableSummary summary = read_summary_tsv(sin);
    auto tin = open_input(dir / kTableFile);
    table = read_table_tsv(tin, summary);
    kept = resolve_kept(cfg, nullptr, nullptr);
  } else {
    if (cfg.inputs.empty()) throw ConfigError("need --from or --input");
    const Corpus corpus = load(cfg);
    table = count_ngrams(corpus, cfg.n_min, cfg.n_max, cfg.threads);
    kept = resolve_kept(cfg, &corpus, &table);
  }

  const auto sections = report_sections(build_report(table, kept, cfg.top_k));
  const fs::path dir = prepare_out(cfg);
  write_file(dir / ("report." + std::string(extension(format))),
             [&](std::ostream& o) { render(o, sections, format); });
  render(out, sections, format);
  return kOk;
}

int cmd_stats(const RunConfig& cfg, std::ostream& out) {
  validate(cfg, true);
  const Format format = parse_format(cfg.format);
  const Corpus corpus = load(cfg);

  std::map<SourceKind, std::pair<std::size_t, std::size_t>> by_kind;
  std::map<CharClass, std::size_t> by_class;
  std::set<std::string_view> types;
  for (const auto& d : corpus.documents()) {
    auto& [docs, tokens] = by_kind[d.source_kind];
    ++docs;
    tokens += d.tokens.size();
    for (const auto& t : d.tokens) {
      ++by_class[t.char_class];
      types.insert(t.surface);
    }
  }

  std::vector<Section> sections;
  sections.push_back({"corpus", {"key", "value"},
                      {{"documents", std::to_string(corpus.size())},
                       {"total_tokens", std::to_string(corpus.total_tokens())},
                       {"types", std::to_string(types.size())}}});
  Section kinds{"sources", {"source_kind", "documents", "tokens", "percent"}, {}};
  for (const auto& [kind, dt] : by_kind) {
    const double pct = corpus.total_tokens()
                           ? 100.0 * static_cast<double>(dt.second) /
                                 static_cast<double>(corpus.total_tokens())
                           : 0.0;
    kinds.rows.push_back({std::string(to_string(kind)), std::to_string(dt.first),
                          std::to_string(dt.second), format_fixed(pct, 2)});
  }
  sections.push_back(std::move(kinds));
  Section classes{"char_classes", {"char_class", "tokens"}, {}};
  for (const auto& [cls, count] : by_class) {
    classes.rows.push_back({std::string(to_string(cls)), std::to_string(count)});
  }
  sections.push_back(std::move(classes));
  render(out, sections, format);
  return kOk;
}

// ---------------------------------------------------------------------------
// Argument parsing

void add_options(CLI::App& app, RunConfig& cfg, std::optional<double>& min_mi,
                 bool& no_article_rule) {
  app.add_option("--input", cfg.inputs, "Input directories or files")->expected(1, -1);
  app.add_option("--manifest", cfg.manifest, "filename<TAB>kind manifest");
  app.add_option("--nmin", cfg.n_min, "Shortest n-gram length")->capture_default_str();
  app.add_option("--nmax", cfg.n_max, "Longest n-gram length")->capture_default_str();
  app.add_option("--min-freq-pm", cfg.filter.min_freq_per_million,
                 "Minimum frequency per million tokens")
      ->capture_default_str();
  app.add_option("--min-range", cfg.filter.min_doc_range, "Minimum document range")
      ->capture_default_str();
  app.add_option("--min-mi", min_mi, "Minimum MI in bits (off unless given)");
  app.add_option("--subsumption-ratio", cfg.filter.subsumption_ratio,
                 "Share of occurrences inside a longer kept bundle that marks a fragment")
      ->capture_default_str();
  app.add_flag("--no-article-rule", no_article_rule, "Keep bundles ending in an article");
  app.add_flag("--mi-report", cfg.mi_report, "Write MI scores without filtering on them");
  app.add_option("--stoplist", cfg.stoplist, "Bundles to exclude, one per line");
  app.add_option("--lexicons", cfg.lexicons, "Lexicon directory")->capture_default_str();
  app.add_option("--format", cfg.format, "tsv, json or pretty")->capture_default_str();
  app.add_option("--out", cfg.out, "Output directory")->capture_default_str();
  app.add_option("--threads", cfg.threads, "Worker threads")->capture_default_str();
  app.add_option("--noise-threshold", cfg.noise_threshold,
                 "Maximum share of non-alphabetic chunks per line")
      ->capture_default_str();
  app.add_option("--from", cfg.from, "Directory with persisted extract/filter outputs");
  app.add_option("--kept", cfg.kept, "Kept-bundle list (TSV or one bundle per line)");
  app.add_option("--top-k", cfg.top_k, "Rows per length in the top list")
      ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  cfg.lexicons = LEXBUNDLE_DEFAULT_LEXICON_DIR;
  std::optional<double> min_mi;
  bool no_article_rule = false;

  CLI::App app{"Lexical bundle extraction, filtering and classification", "lexbundle"};
  app.set_config("--config", "", "key=value configuration file; flags take precedence");
  add_options(app, cfg, min_mi, no_article_rule);
  app.require_subcommand(1);
  app.fallthrough();
  std::map<std::string, std::function<int(const RunConfig&, std::ostream&)>> commands{
      {"extract", cmd_extract}, {"filter", cmd_filter},   {"classify", cmd_classify},
      {"report", cmd_report},   {"stats", cmd_stats},
  };
  const std::map<std::string, std::string> help{
      {"extract", "Count n-grams and write bundles.tsv and summary.tsv"},
      {"filter", "Apply the exclusion cascade; write ledger.tsv and kept.tsv"},
      {"classify", "Structural and functional labels for kept bundles"},
      {"report", "Size distribution, top-k lists and coverage"},
      {"stats", "Corpus statistics"},
  };
  for (const auto& [name, _] : commands) app.add_subcommand(name, help.at(name));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigFailure;
  }

  cfg.filter.min_mi = min_mi;
  cfg.filter.apply_article_rule = !no_article_rule;
  const std::string name = app.get_subcommands().front()->get_name();

  try {
    return commands.at(name)(cfg, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigFailure;
  } catch (const PrerequisiteError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigFailure;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const DecodeError& e) {
    err << "error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kIoFailure;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace lexbundle::cli
