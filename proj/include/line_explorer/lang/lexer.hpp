#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace line_explorer::lang {

enum class TokenKind {
  Identifier, Integer,
  KwWhile, KwIf, KwElse, KwTrue, KwFalse, KwAnd, KwOr, KwNot,
  Plus, Minus, Star, Slash, Percent,
  Less, LessEq, Greater, GreaterEq, EqualEqual, BangEqual, Bang,
  AmpAmp, PipePipe,
  Assign, LParen, RParen, LBrace, RBrace, Semicolon,
  End,
};

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  int column = 0;  // 1-based byte column
  std::int64_t int_value = 0;
};

std::string_view describe(TokenKind kind);

// Tokenizes one source line. `//` starts a comment. The result always ends
// with an End token. Throws ParseError on an unexpected character or an
// integer literal that does not fit in 64 bits.
std::vector<Token> lex_line(std::string_view line, int line_number);

// True when `name` lexes as a single identifier (keywords excluded).
bool is_identifier(std::string_view name);

}  // namespace line_explorer::lang
