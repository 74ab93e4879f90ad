#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bnpin {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed rule or target text. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// A rule mentions more variables than the truth-table enumeration cap allows.
class ArityError : public Error {
 public:
  using Error::Error;
};

// Explicit target set in which some fixed-state node takes both values.
// nodes() holds the offending 0-based node indices.
class AmbiguousTarget : public Error {
 public:
  AmbiguousTarget(const std::string& what, std::vector<std::size_t> nodes)
      : Error(what), nodes_(std::move(nodes)) {}

  const std::vector<std::size_t>& nodes() const noexcept { return nodes_; }

 private:
  std::vector<std::size_t> nodes_;
};

// Violated internal invariant of the synthesis or verification pipeline.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace bnpin
