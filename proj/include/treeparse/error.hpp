#pragma once

#include <stdexcept>
#include <string>

namespace treeparse {

// Malformed bracketed input. Positions are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column)
      : std::runtime_error(what + " (line " + std::to_string(line) +
                           ", column " + std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Invalid data for an operation (empty corpus, bad fold count, ...).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// A tree uses a rule the grammar does not contain.
class CoverageError : public std::runtime_error {
 public:
  CoverageError(const std::string& what, std::string rule)
      : std::runtime_error(what + ": " + rule), rule_(std::move(rule)) {}

  const std::string& rule() const { return rule_; }

 private:
  std::string rule_;
};

// Bad configuration (unknown model name, invalid flag value, ...).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace treeparse
