#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace supertour {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid user-supplied parameters (bad seed counts, unknown function names,
/// out-of-range levels). The CLI maps these to exit code 2.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Malformed input file. Carries the 1-based line number of the offending line.
class ParseError : public ConfigError {
public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : ConfigError(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

}  // namespace supertour
