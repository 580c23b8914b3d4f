#pragma once

#include <stdexcept>
#include <string>

namespace tqcsp {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// A clause cannot be written with a common pivot (or has more than one
// >=-disjunct); only the general dialect applies.
class NotPivoted : public Error {
 public:
  using Error::Error;
};

// Input is outside the dialect an operation accepts.
class DialectError : public Error {
 public:
  using Error::Error;
};

class ArityError : public Error {
 public:
  using Error::Error;
};

class ResourceLimit : public Error {
 public:
  using Error::Error;
};

// Raised by the existential-player strategy when no consistent position exists.
class StrategyUndefined : public Error {
 public:
  using Error::Error;
};

// Raised when no >=-disjunct of a clause can be kept alone without changing the relation.
class NoValidIndex : public Error {
 public:
  using Error::Error;
};

class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace tqcsp
