#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lexbundle/ngram.hpp"

namespace lexbundle::cli {

/// A titled table of string cells; the unit every output format renders.
struct Section {
  std::string name;
  std::vector<std::string> headers;
  std::vector<std::vector<std::string>> rows;
};

enum class Format { tsv, json, pretty };

Format parse_format(std::string_view s);  // throws ConfigError
std::string_view extension(Format f);

/// tsv: "# name", header row, data rows, blank line between sections.
/// json: one object keyed by section name, each an array of row objects;
/// integer-valued cells become JSON numbers.
/// pretty: aligned columns under an underlined title.
void render(std::ostream& out, std::span<const Section> sections, Format format);

struct CoverageRow {
  std::string selection;
  std::size_t bundles = 0;
  std::uint64_t occurrences = 0;
  std::uint64_t token_mass = 0;
  std::optional<double> fraction;
};

struct Report {
  std::map<int, std::size_t> distribution;
  std::vector<std::pair<NgramKey, BundleStats>> top;
  std::vector<CoverageRow> coverage;
  std::uint64_t total_tokens = 0;
};

/// Size distribution of the kept bundles, the top `k` bundles of every
/// length in the table, and coverage for the kept set and for the top five
/// of each length.
Report build_report(const BundleTable& table, std::span<const NgramKey> kept,
                    std::size_t k);

std::vector<Section> report_sections(const Report& report);

}  // namespace lexbundle::cli
