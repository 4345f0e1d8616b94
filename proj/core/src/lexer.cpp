#include "hybridkit/lexer.hpp"

#include <array>
#include <cctype>

namespace hybridkit {

namespace {

// Longest symbols first so that maximal munch works by linear scan.
constexpr std::array<std::string_view, 23> kSymbols = {
    "\\/", "/\\", "=>", "->", "<=", "<", ">", "!", "(", ")", "{", "}",
    "[",   "]",   ",",  ";",  ":",  ".", "=", "@", "*", "/", "-"};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

}  // namespace

Lexer::Lexer(std::string_view src, SourcePos origin) {
  std::size_t i = 0;
  int line = origin.line;
  int col = origin.column;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };

  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '#' || (c == '/' && i + 1 < src.size() && src[i + 1] == '/')) {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    SourcePos pos{line, col};
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      tokens_.push_back({TokenKind::Identifier, std::string(src.substr(i, j - i)), pos});
      advance(j - i);
      continue;
    }
    if (digit(c)) {
      std::size_t j = i;
      while (j < src.size() && digit(src[j])) ++j;
      if (j + 1 < src.size() && (src[j] == '/' || src[j] == '.') && digit(src[j + 1])) {
        ++j;
        while (j < src.size() && digit(src[j])) ++j;
      }
      tokens_.push_back({TokenKind::Number, std::string(src.substr(i, j - i)), pos});
      advance(j - i);
      continue;
    }
    if (c == '"') {
      std::size_t j = i + 1;
      while (j < src.size() && src[j] != '"' && src[j] != '\n') ++j;
      if (j >= src.size() || src[j] != '"') {
        throw ParseError(pos, "unterminated string literal");
      }
      tokens_.push_back({TokenKind::String, std::string(src.substr(i + 1, j - i - 1)), pos});
      advance(j + 1 - i);
      continue;
    }
    bool matched = false;
    for (std::string_view sym : kSymbols) {
      if (src.substr(i, sym.size()) == sym) {
        tokens_.push_back({TokenKind::Symbol, std::string(sym), pos});
        advance(sym.size());
        matched = true;
        break;
      }
    }
    if (!matched) {
      std::string shown = std::isprint(static_cast<unsigned char>(c))
                              ? std::string("'") + c + "'"
                              : "byte 0x" + std::to_string(static_cast<unsigned char>(c));
      throw ParseError(pos, "unexpected character " + shown);
    }
  }
  tokens_.push_back({TokenKind::End, "", SourcePos{line, col}});
}

const Token& Lexer::peek(std::size_t ahead) const {
  std::size_t idx = cursor_ + ahead;
  return idx < tokens_.size() ? tokens_[idx] : tokens_.back();
}

Token Lexer::next() {
  Token t = peek();
  if (cursor_ + 1 < tokens_.size()) ++cursor_;
  return t;
}

bool Lexer::accept(std::string_view text) {
  if (peek().is(text)) {
    next();
    return true;
  }
  return false;
}

Token Lexer::expect(std::string_view text) {
  if (!peek().is(text)) fail(peek(), "unexpected " + describe(peek()), {"'" + std::string(text) + "'"});
  return next();
}

Token Lexer::expect_identifier(std::string_view what) {
  if (peek().kind != TokenKind::Identifier) {
    fail(peek(), "unexpected " + describe(peek()), {std::string(what)});
  }
  return next();
}

Token Lexer::expect_label(std::string_view what) {
  if (peek().kind != TokenKind::Identifier && peek().kind != TokenKind::Number) {
    fail(peek(), "unexpected " + describe(peek()), {std::string(what)});
  }
  return next();
}

void Lexer::fail(const Token& at, std::string message, std::vector<std::string> expected) const {
  throw ParseError(at.pos, std::move(message), std::move(expected));
}

Lexer::Nesting::Nesting(Lexer& lexer) : lexer_(lexer) {
  if (++lexer_.nesting_ > kMaxNesting) {
    --lexer_.nesting_;
    lexer_.fail(lexer_.peek(), "nesting too deep");
  }
}

Lexer::Nesting::~Nesting() { --lexer_.nesting_; }

std::string describe(const Token& token) {
  switch (token.kind) {
    case TokenKind::End: return "end of input";
    case TokenKind::Identifier: return "identifier '" + token.text + "'";
    case TokenKind::Number: return "number '" + token.text + "'";
    case TokenKind::String: return "string \"" + token.text + "\"";
    case TokenKind::Symbol: return "'" + token.text + "'";
  }
  return "token";
}

}  // namespace hybridkit
