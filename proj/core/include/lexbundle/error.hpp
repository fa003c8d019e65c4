#pragma once

#include <stdexcept>
#include <string>

namespace lexbundle {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A file could not be opened, read or written. The message names the path.
class IoError : public Error {
 public:
  using Error::Error;
};

/// A file was readable but is not valid UTF-8 text.
class DecodeError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration: bad n range, thresholds out of bounds, malformed
/// lexicon or manifest entries, keys outside a table.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A statistic has no defined value for the given input (empty corpus,
/// zero occurrences, zero windows).
class UndefinedStatisticError : public Error {
 public:
  using Error::Error;
};

/// An operation needs data that was not collected, e.g. MI scoring on a
/// table counted without unigrams.
class PrerequisiteError : public Error {
 public:
  using Error::Error;
};

}  // namespace lexbundle
