#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "lexbundle/filter.hpp"

namespace lexbundle::cli {

enum ExitCode : int { kOk = 0, kIoFailure = 1, kConfigFailure = 2 };

struct RunConfig {
  std::vector<std::string> inputs;
  std::string manifest;
  int n_min = 1;
  int n_max = kMaxOrder;
  FilterConfig filter;
  std::string stoplist;
  std::string lexicons;
  std::string format = "tsv";
  std::string out = "lexbundle-out";
  unsigned threads = 1;
  double noise_threshold = kDefaultNoiseThreshold;
  bool mi_report = false;
  /// Directory holding persisted extract/filter outputs.
  std::string from;
  /// Kept-bundle list; overrides the one produced by filtering.
  std::string kept;
  std::size_t top_k = 50;
};

/// Parses arguments and runs one subcommand. Returns 0 on success, 1 on an
/// I/O failure, 2 on invalid configuration.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lexbundle::cli
