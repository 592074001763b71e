#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tak {

// Argument outside the domain an operation is defined on (board size 9,
// zero carry, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Caller broke a precondition, e.g. asked for moves of a finished game.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class IllegalMove : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Text that does not follow a grammar. offset is a byte offset into the
// input that was being parsed.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (at offset " + std::to_string(offset) + ")"),
        reason_(what),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::string reason_;
  std::size_t offset_;
};

// Problem in a .lines file; line and column are 1-based.
class LineFileError : public std::runtime_error {
 public:
  LineFileError(const std::string& source, int line, int column, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) +
                           ": " + what),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace tak
