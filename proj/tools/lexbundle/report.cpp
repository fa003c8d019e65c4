#include "lexbundle/report.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>
#include <set>

#include <json.hpp>

#include "lexbundle/error.hpp"

namespace lexbundle::cli {

Format parse_format(std::string_view s) {
  if (s == "tsv") return Format::tsv;
  if (s == "json") return Format::json;
  if (s == "pretty") return Format::pretty;
  throw ConfigError("unknown format '" + std::string(s) + "' (tsv, json, pretty)");
}

std::string_view extension(Format f) {
  switch (f) {
    case Format::tsv: return "tsv";
    case Format::json: return "json";
    case Format::pretty: return "txt";
  }
  return "txt";
}

namespace {

bool as_integer(const std::string& s, long long& v) {
  if (s.empty()) return false;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && p == s.data() + s.size();
}

void render_tsv(std::ostream& out, std::span<const Section> sections) {
  for (std::size_t i = 0; i < sections.size(); ++i) {
    const auto& s = sections[i];
    if (i) out << '\n';
    out << "# " << s.name << '\n';
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t c = 0; c < cells.size(); ++c) out << (c ? "\t" : "") << cells[c];
      out << '\n';
    };
    line(s.headers);
    for (const auto& r : s.rows) line(r);
  }
}

void render_json(std::ostream& out, std::span<const Section> sections) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  for (const auto& s : sections) {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& r : s.rows) {
      nlohmann::ordered_json obj = nlohmann::ordered_json::object();
      for (std::size_t c = 0; c < s.headers.size() && c < r.size(); ++c) {
        long long v = 0;
        if (as_integer(r[c], v)) {
          obj[s.headers[c]] = v;
        } else {
          obj[s.headers[c]] = r[c];
        }
      }
      rows.push_back(std::move(obj));
    }
    doc[s.name] = std::move(rows);
  }
  out << doc.dump(2) << '\n';
}

std::size_t display_width(const std::string& s) {
  // Count code points, not bytes.
  return static_cast<std::size_t>(std::count_if(
      s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

void render_pretty(std::ostream& out, std::span<const Section> sections) {
  for (std::size_t i = 0; i < sections.size(); ++i) {
    const auto& s = sections[i];
    if (i) out << '\n';
    out << s.name << '\n' << std::string(display_width(s.name), '=') << '\n';
    std::vector<std::size_t> width(s.headers.size());
    for (std::size_t c = 0; c < s.headers.size(); ++c) width[c] = display_width(s.headers[c]);
    for (const auto& r : s.rows) {
      for (std::size_t c = 0; c < r.size() && c < width.size(); ++c) {
        width[c] = std::max(width[c], display_width(r[c]));
      }
    }
    auto line = [&](const std::vector<std::string>& cells) {
      std::string text;
      for (std::size_t c = 0; c < cells.size() && c < width.size(); ++c) {
        if (c) text += "  ";
        text += cells[c];
        if (c + 1 < cells.size()) text.append(width[c] - display_width(cells[c]), ' ');
      }
      out << text << '\n';
    };
    line(s.headers);
    std::vector<std::string> rule;
    for (auto w : width) rule.emplace_back(w, '-');
    line(rule);
    for (const auto& r : s.rows) line(r);
  }
}

}  // namespace

void render(std::ostream& out, std::span<const Section> sections, Format format) {
  switch (format) {
    case Format::tsv: render_tsv(out, sections); break;
    case Format::json: render_json(out, sections); break;
    case Format::pretty: render_pretty(out, sections); break;
  }
}

namespace {

CoverageRow coverage_row(const BundleTable& table, std::string selection,
                         std::span<const NgramKey> keys) {
  CoverageRow row;
  row.selection = std::move(selection);
  const std::set<NgramKey> unique(keys.begin(), keys.end());
  row.bundles = unique.size();
  for (const auto& k : unique) {
    const auto s = table.at(k);
    row.occurrences += s.raw_freq;
    row.token_mass += s.raw_freq * static_cast<std::uint64_t>(k.size());
  }
  if (table.corpus_total_tokens() > 0) row.fraction = coverage_stat(table, keys);
  return row;
}

}  // namespace

Report build_report(const BundleTable& table, std::span<const NgramKey> kept,
                    std::size_t k) {
  Report report;
  report.total_tokens = table.corpus_total_tokens();
  report.distribution = size_distribution(table, kept);

  std::vector<NgramKey> top5;
  for (int n = table.n_min(); n <= table.n_max(); ++n) {
    for (auto& entry : top_k(table, k, n)) report.top.push_back(std::move(entry));
    for (auto& [key, stats] : top_k(table, 5, n)) top5.push_back(key);
  }
  report.coverage.push_back(coverage_row(table, "kept", kept));
  report.coverage.push_back(coverage_row(table, "top5_per_length", top5));
  return report;
}

std::vector<Section> report_sections(const Report& report) {
  std::vector<Section> sections;

  Section dist{"distribution", {"n", "bundles"}, {}};
  std::size_t total = 0;
  for (const auto& [n, count] : report.distribution) {
    dist.rows.push_back({std::to_string(n), std::to_string(count)});
    total += count;
  }
  dist.rows.push_back({"total", std::to_string(total)});
  sections.push_back(std::move(dist));

  Section top{"top_k", {"n", "rank", "ngram", "raw_freq", "per_million", "doc_range"}, {}};
  int current = 0;
  int rank = 0;
  for (const auto& [key, stats] : report.top) {
    if (key.size() != current) {
      current = key.size();
      rank = 0;
    }
    top.rows.push_back({std::to_string(key.size()), std::to_string(++rank), key.joined(),
                        std::to_string(stats.raw_freq),
                        format_fixed(stats.freq_per_million, 2),
                        std::to_string(stats.doc_range)});
  }
  sections.push_back(std::move(top));

  Section cov{"coverage",
              {"selection", "bundles", "occurrences", "token_mass", "total_tokens", "percent"},
              {}};
  for (const auto& row : report.coverage) {
    cov.rows.push_back({row.selection, std::to_string(row.bundles),
                        std::to_string(row.occurrences), std::to_string(row.token_mass),
                        std::to_string(report.total_tokens),
                        row.fraction ? format_fixed(*row.fraction * 100.0, 2) : "undefined"});
  }
  sections.push_back(std::move(cov));
  return sections;
}

}  // namespace lexbundle::cli
