#pragma once

#include <stdexcept>
#include <string>

namespace bephaz {

/// Bad user input: malformed flags, unreadable files, invalid parameter values.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Input data violates a structural requirement (e.g. deaths exceed at-risk).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// A sampler or summary invariant broke; indicates a bug, not bad input.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace bephaz
