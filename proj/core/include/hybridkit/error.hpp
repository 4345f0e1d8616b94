#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hybridkit {

/// Line/column of a token in a source text. Line 0 means "no position".
///
/// Positions are carried through the syntax trees for diagnostics only, so
/// two positions always compare equal: AST equality is structural.
struct SourcePos {
  int line = 0;
  int column = 0;

  bool known() const { return line > 0; }
  std::string str() const;

  friend bool operator==(const SourcePos&, const SourcePos&) { return true; }
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value violates an invariant of its type (undeclared symbol, partial map,
/// ill-sorted term, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An operation was called on arguments outside its domain (for example a
/// global check on a relation that is not total).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Lexical, syntax or resolution error with a source position.
class ParseError : public Error {
 public:
  ParseError(SourcePos pos, std::string message, std::vector<std::string> expected = {});

  const SourcePos& pos() const { return pos_; }
  const std::string& message() const { return message_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  SourcePos pos_;
  std::string message_;
  std::vector<std::string> expected_;
};

}  // namespace hybridkit
