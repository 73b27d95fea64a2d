#include "line_explorer/lang/lexer.hpp"

#include <charconv>
#include <unordered_map>

#include "line_explorer/lang/parser.hpp"

namespace line_explorer::lang {

std::string_view describe(TokenKind kind) {
  switch (kind) {
    case TokenKind::Identifier: return "identifier";
    case TokenKind::Integer: return "integer";
    case TokenKind::KwWhile: return "'while'";
    case TokenKind::KwIf: return "'if'";
    case TokenKind::KwElse: return "'else'";
    case TokenKind::KwTrue: return "'true'";
    case TokenKind::KwFalse: return "'false'";
    case TokenKind::KwAnd: return "'and'";
    case TokenKind::KwOr: return "'or'";
    case TokenKind::KwNot: return "'not'";
    case TokenKind::Plus: return "'+'";
    case TokenKind::Minus: return "'-'";
    case TokenKind::Star: return "'*'";
    case TokenKind::Slash: return "'/'";
    case TokenKind::Percent: return "'%'";
    case TokenKind::Less: return "'<'";
    case TokenKind::LessEq: return "'<='";
    case TokenKind::Greater: return "'>'";
    case TokenKind::GreaterEq: return "'>='";
    case TokenKind::EqualEqual: return "'=='";
    case TokenKind::BangEqual: return "'!='";
    case TokenKind::Bang: return "'!'";
    case TokenKind::AmpAmp: return "'&&'";
    case TokenKind::PipePipe: return "'||'";
    case TokenKind::Assign: return "'='";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::LBrace: return "'{'";
    case TokenKind::RBrace: return "'}'";
    case TokenKind::Semicolon: return "';'";
    case TokenKind::End: return "end of line";
  }
  return "token";
}

namespace {

bool is_ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool is_digit(char c) { return c >= '0' && c <= '9'; }

TokenKind keyword_or_identifier(std::string_view word) {
  static const std::unordered_map<std::string_view, TokenKind> kKeywords = {
      {"while", TokenKind::KwWhile}, {"if", TokenKind::KwIf},     {"else", TokenKind::KwElse},
      {"true", TokenKind::KwTrue},   {"false", TokenKind::KwFalse}, {"and", TokenKind::KwAnd},
      {"or", TokenKind::KwOr},       {"not", TokenKind::KwNot},
  };
  auto it = kKeywords.find(word);
  return it == kKeywords.end() ? TokenKind::Identifier : it->second;
}

}  // namespace

std::vector<Token> lex_line(std::string_view line, int line_number) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  auto push = [&](TokenKind kind, std::size_t start, std::size_t len) {
    tokens.push_back({kind, std::string(line.substr(start, len)), static_cast<int>(start) + 1, 0});
    i = start + len;
  };

  while (i < line.size()) {
    const char c = line[i];
    if (c == ' ' || c == '\t') {
      ++i;
      continue;
    }
    if (c == '/' && i + 1 < line.size() && line[i + 1] == '/') break;

    if (is_ident_start(c)) {
      std::size_t j = i;
      while (j < line.size() && (is_ident_start(line[j]) || is_digit(line[j]))) ++j;
      push(keyword_or_identifier(line.substr(i, j - i)), i, j - i);
      continue;
    }
    if (is_digit(c)) {
      std::size_t j = i;
      while (j < line.size() && is_digit(line[j])) ++j;
      if (j < line.size() && is_ident_start(line[j])) {
        throw ParseError(line_number, static_cast<int>(j) + 1, "malformed number");
      }
      Token t{TokenKind::Integer, std::string(line.substr(i, j - i)), static_cast<int>(i) + 1, 0};
      auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + j, t.int_value);
      if (ec != std::errc{} || ptr != line.data() + j) {
        throw ParseError(line_number, t.column, "integer literal out of range: " + t.text);
      }
      tokens.push_back(std::move(t));
      i = j;
      continue;
    }

    const char next = i + 1 < line.size() ? line[i + 1] : '\0';
    switch (c) {
      case '+': push(TokenKind::Plus, i, 1); continue;
      case '-': push(TokenKind::Minus, i, 1); continue;
      case '*': push(TokenKind::Star, i, 1); continue;
      case '/': push(TokenKind::Slash, i, 1); continue;
      case '%': push(TokenKind::Percent, i, 1); continue;
      case '(': push(TokenKind::LParen, i, 1); continue;
      case ')': push(TokenKind::RParen, i, 1); continue;
      case '{': push(TokenKind::LBrace, i, 1); continue;
      case '}': push(TokenKind::RBrace, i, 1); continue;
      case ';': push(TokenKind::Semicolon, i, 1); continue;
      case '<':
        if (next == '=') push(TokenKind::LessEq, i, 2); else push(TokenKind::Less, i, 1);
        continue;
      case '>':
        if (next == '=') push(TokenKind::GreaterEq, i, 2); else push(TokenKind::Greater, i, 1);
        continue;
      case '=':
        if (next == '=') push(TokenKind::EqualEqual, i, 2); else push(TokenKind::Assign, i, 1);
        continue;
      case '!':
        if (next == '=') push(TokenKind::BangEqual, i, 2); else push(TokenKind::Bang, i, 1);
        continue;
      case '&':
        if (next == '&') { push(TokenKind::AmpAmp, i, 2); continue; }
        break;
      case '|':
        if (next == '|') { push(TokenKind::PipePipe, i, 2); continue; }
        break;
      default:
        break;
    }
    const auto byte = static_cast<unsigned char>(c);
    std::string shown = (byte >= 0x20 && byte < 0x7f) ? std::string(1, c) : "\\x" + [&] {
      static const char* hex = "0123456789abcdef";
      return std::string{hex[byte >> 4], hex[byte & 0xf]};
    }();
    throw ParseError(line_number, static_cast<int>(i) + 1, "unexpected character '" + shown + "'");
  }
  tokens.push_back({TokenKind::End, "", static_cast<int>(line.size()) + 1, 0});
  return tokens;
}

bool is_identifier(std::string_view name) {
  if (name.empty()) return false;
  try {
    auto toks = lex_line(name, 1);
    return toks.size() == 2 && toks[0].kind == TokenKind::Identifier && toks[0].text == name;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace line_explorer::lang
