#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "hybridkit/error.hpp"

namespace hybridkit {

enum class TokenKind { Identifier, Number, String, Symbol, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  SourcePos pos;

  bool is(std::string_view s) const {
    return (kind == TokenKind::Symbol || kind == TokenKind::Identifier) && text == s;
  }
};

/// Tokenizer shared by the base-logic sentence parsers and the spec-file
/// parser. Identifiers are `[A-Za-z_][A-Za-z0-9_']*`; numbers may carry a
/// fraction (`2/3`) or a decimal part (`0.5`); `//` and `#` start comments.
class Lexer {
 public:
  /// Tokenizes eagerly; throws ParseError on a lexical error.
  explicit Lexer(std::string_view source, SourcePos origin = {1, 1});

  const Token& peek(std::size_t ahead = 0) const;
  Token next();
  bool at_end() const { return peek().kind == TokenKind::End; }

  /// Consumes the token if it is the given symbol or keyword.
  bool accept(std::string_view text);
  Token expect(std::string_view text);
  Token expect_identifier(std::string_view what);
  /// Identifier or number (element labels, truth values).
  Token expect_label(std::string_view what);

  [[noreturn]] void fail(const Token& at, std::string message,
                         std::vector<std::string> expected = {}) const;

  /// RAII nesting counter; deeply nested input is rejected instead of
  /// exhausting the stack.
  class Nesting {
   public:
    explicit Nesting(Lexer& lexer);
    ~Nesting();
    Nesting(const Nesting&) = delete;
    Nesting& operator=(const Nesting&) = delete;

   private:
    Lexer& lexer_;
  };

  static constexpr int kMaxNesting = 200;

 private:
  std::vector<Token> tokens_;
  std::size_t cursor_ = 0;
  int nesting_ = 0;
};

std::string describe(const Token& token);

}  // namespace hybridkit
