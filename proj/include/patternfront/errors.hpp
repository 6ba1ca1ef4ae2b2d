#pragma once

#include <stdexcept>
#include <string>

namespace patternfront {

// Precondition or parameter-domain violation (CLI exit code 2).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed configuration input; carries the 1-based line number when known.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

// A numerical procedure failed to deliver (CLI exit code 3).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace patternfront
