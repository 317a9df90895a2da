#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace netbandit {

// Caller broke a documented precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An internal invariant failed mid-run; the run cannot continue.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Cached clustering/matching was produced from different inputs or params.
class StaleCacheError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define NETBANDIT_REQUIRE(cond, msg)                  \
  do {                                                \
    if (!(cond)) throw ::netbandit::ContractViolation(msg); \
  } while (0)

}  // namespace netbandit
