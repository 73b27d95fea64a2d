#include "line_explorer/lang/parser.hpp"

#include <algorithm>
#include <optional>

#include "line_explorer/lang/lexer.hpp"

namespace line_explorer::lang {

ParseError::ParseError(int line, int column, const std::string& message)
    : Error("ParseError",
            "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      detail_(message) {}

namespace {

constexpr int kMaxBlockDepth = 64;
constexpr int kMaxExprDepth = 200;

struct LineTokens {
  int line = 0;
  std::vector<Token> tokens;
};

// How a block was closed: a bare `}` or `} else {`.
struct BlockEnd {
  int line = 0;
  bool opens_else = false;
};

class ExprParser {
 public:
  ExprParser(const std::vector<Token>& tokens, std::size_t pos, int line,
             std::vector<std::string>& reads)
      : tokens_(tokens), pos_(pos), line_(line), reads_(reads) {}

  ExprPtr parse() { return parse_or(); }
  std::size_t position() const { return pos_; }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& advance() { return tokens_[pos_++]; }
  bool at(TokenKind k) const { return peek().kind == k; }

  [[noreturn]] void fail(const Token& t, const std::string& what) const {
    throw ParseError(line_, t.column, what);
  }

  ExprPtr parse_or() {
    ExprPtr lhs = parse_and();
    while (at(TokenKind::KwOr) || at(TokenKind::PipePipe)) {
      const int col = advance().column;
      lhs = make_binary(BinaryOp::Or, lhs, parse_and(), col);
    }
    return lhs;
  }

  ExprPtr parse_and() {
    ExprPtr lhs = parse_equality();
    while (at(TokenKind::KwAnd) || at(TokenKind::AmpAmp)) {
      const int col = advance().column;
      lhs = make_binary(BinaryOp::And, lhs, parse_equality(), col);
    }
    return lhs;
  }

  ExprPtr parse_equality() {
    ExprPtr lhs = parse_relational();
    for (;;) {
      BinaryOp op;
      if (at(TokenKind::EqualEqual)) op = BinaryOp::Equal;
      else if (at(TokenKind::BangEqual)) op = BinaryOp::NotEqual;
      else return lhs;
      const int col = advance().column;
      lhs = make_binary(op, lhs, parse_relational(), col);
    }
  }

  ExprPtr parse_relational() {
    ExprPtr lhs = parse_additive();
    for (;;) {
      BinaryOp op;
      if (at(TokenKind::Less)) op = BinaryOp::Less;
      else if (at(TokenKind::LessEq)) op = BinaryOp::LessEq;
      else if (at(TokenKind::Greater)) op = BinaryOp::Greater;
      else if (at(TokenKind::GreaterEq)) op = BinaryOp::GreaterEq;
      else return lhs;
      const int col = advance().column;
      lhs = make_binary(op, lhs, parse_additive(), col);
    }
  }

  ExprPtr parse_additive() {
    ExprPtr lhs = parse_multiplicative();
    for (;;) {
      BinaryOp op;
      if (at(TokenKind::Plus)) op = BinaryOp::Add;
      else if (at(TokenKind::Minus)) op = BinaryOp::Sub;
      else return lhs;
      const int col = advance().column;
      lhs = make_binary(op, lhs, parse_multiplicative(), col);
    }
  }

  ExprPtr parse_multiplicative() {
    ExprPtr lhs = parse_unary();
    for (;;) {
      BinaryOp op;
      if (at(TokenKind::Star)) op = BinaryOp::Mul;
      else if (at(TokenKind::Slash)) op = BinaryOp::Div;
      else if (at(TokenKind::Percent)) op = BinaryOp::Mod;
      else return lhs;
      const int col = advance().column;
      lhs = make_binary(op, lhs, parse_unary(), col);
    }
  }

  ExprPtr parse_unary() {
    if (at(TokenKind::Minus) || at(TokenKind::Bang) || at(TokenKind::KwNot)) {
      const Token& t = advance();
      const UnaryOp op = t.kind == TokenKind::Minus ? UnaryOp::Negate : UnaryOp::Not;
      DepthGuard guard(*this, t);
      return make_unary(op, parse_unary(), t.column);
    }
    return parse_primary();
  }

  ExprPtr parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::Integer:
        advance();
        return make_int(t.int_value, t.column);
      case TokenKind::KwTrue:
        advance();
        return make_bool(true, t.column);
      case TokenKind::KwFalse:
        advance();
        return make_bool(false, t.column);
      case TokenKind::Identifier:
        advance();
        reads_.push_back(t.text);
        return make_var(t.text, t.column);
      case TokenKind::LParen: {
        advance();
        DepthGuard guard(*this, t);
        ExprPtr inner = parse_or();
        if (!at(TokenKind::RParen)) {
          fail(peek(), "expected ')' to close '(' at column " + std::to_string(t.column) +
                           ", found " + std::string(describe(peek().kind)));
        }
        advance();
        return inner;
      }
      default:
        fail(t, "expected an expression, found " + std::string(describe(t.kind)));
    }
  }

  struct DepthGuard {
    DepthGuard(ExprParser& p, const Token& t) : parser(p) {
      if (++parser.depth_ > kMaxExprDepth) parser.fail(t, "expression nested too deeply");
    }
    ~DepthGuard() { --parser.depth_; }
    ExprParser& parser;
  };

  const std::vector<Token>& tokens_;
  std::size_t pos_;
  int line_;
  int depth_ = 0;
  std::vector<std::string>& reads_;
};

class Parser {
 public:
  explicit Parser(const SourceProgram& source) : source_(source) {}

  Program run() {
    Program program;
    program.statements = parse_block(0, std::nullopt).first;

    std::vector<std::string> declared;
    auto add_unique = [&](const std::string& name) {
      if (std::find(declared.begin(), declared.end(), name) == declared.end()) {
        declared.push_back(name);
      }
    };
    for (const auto& n : assigned_) add_unique(n);
    for (const auto& n : reads_) add_unique(n);
    program.declared_variables = std::move(declared);
    return program;
  }

 private:
  std::optional<LineTokens> next_nonblank() {
    while (cursor_ <= source_.line_count()) {
      const int number = cursor_++;
      auto tokens = lex_line(source_.line(number), number);
      if (tokens.front().kind != TokenKind::End) return LineTokens{number, std::move(tokens)};
    }
    return std::nullopt;
  }

  int last_line() const { return std::max(1, source_.line_count()); }

  [[noreturn]] static void fail(int line, const Token& t, const std::string& what) {
    throw ParseError(line, t.column, what);
  }

  static void expect_end(const LineTokens& lt, std::size_t pos, const char* after) {
    const Token& t = lt.tokens[pos];
    if (t.kind != TokenKind::End) {
      fail(lt.line, t,
           std::string("unexpected ") + std::string(describe(t.kind)) + " after " + after +
               " (one statement per line)");
    }
  }

  // Returns the statements and, for a nested block, how it was closed.
  std::pair<std::vector<Stmt>, BlockEnd> parse_block(int depth, std::optional<int> opened_at) {
    std::vector<Stmt> body;
    for (;;) {
      auto lt = next_nonblank();
      if (!lt) {
        if (opened_at) {
          throw ParseError(last_line(), 1,
                           "missing '}' for block opened at line " + std::to_string(*opened_at));
        }
        return {std::move(body), BlockEnd{}};
      }
      const Token& first = lt->tokens.front();
      switch (first.kind) {
        case TokenKind::RBrace: {
          if (!opened_at) fail(lt->line, first, "unexpected '}' with no open block");
          const auto& t = lt->tokens;
          if (t[1].kind == TokenKind::End) return {std::move(body), BlockEnd{lt->line, false}};
          if (t[1].kind == TokenKind::KwElse && t[2].kind == TokenKind::LBrace &&
              t[3].kind == TokenKind::End) {
            return {std::move(body), BlockEnd{lt->line, true}};
          }
          fail(lt->line, t[1], "'}' must stand alone on its line (or as '} else {')");
        }
        case TokenKind::KwElse:
          fail(lt->line, first, "'else' without a matching 'if'");
        case TokenKind::KwWhile:
          body.push_back(parse_while(*lt, depth));
          break;
        case TokenKind::KwIf:
          body.push_back(parse_if(*lt, depth));
          break;
        case TokenKind::Identifier:
          body.push_back(parse_assign(*lt));
          break;
        default:
          fail(lt->line, first, "expected a statement, found " + std::string(describe(first.kind)));
      }
    }
  }

  ExprPtr parse_header(const LineTokens& lt, const char* keyword) {
    ExprParser ep(lt.tokens, 1, lt.line, reads_);
    ExprPtr cond = ep.parse();
    std::size_t pos = ep.position();
    if (lt.tokens[pos].kind != TokenKind::LBrace) {
      fail(lt.line, lt.tokens[pos],
           std::string("expected '{' at the end of the ") + keyword + " line, found " +
               std::string(describe(lt.tokens[pos].kind)));
    }
    expect_end(lt, pos + 1, "'{'");
    return cond;
  }

  void enter_block(const LineTokens& lt, int depth) {
    if (depth + 1 > kMaxBlockDepth) fail(lt.line, lt.tokens.front(), "blocks nested too deeply");
  }

  Stmt parse_while(const LineTokens& lt, int depth) {
    enter_block(lt, depth);
    While w;
    w.condition = parse_header(lt, "while");
    auto [body, end] = parse_block(depth + 1, lt.line);
    if (end.opens_else) {
      throw ParseError(end.line, 3, "'else' without a matching 'if'");
    }
    w.body = std::move(body);
    w.close_line = end.line;
    return Stmt{lt.line, std::move(w)};
  }

  Stmt parse_if(const LineTokens& lt, int depth) {
    enter_block(lt, depth);
    If node;
    node.condition = parse_header(lt, "if");
    auto [then_body, then_end] = parse_block(depth + 1, lt.line);
    node.then_body = std::move(then_body);

    bool has_else = then_end.opens_else;
    if (has_else) {
      node.else_line = then_end.line;
    } else {
      // `else {` may also open the line after a bare `}`.
      const int saved = cursor_;
      auto peeked = next_nonblank();
      if (peeked && peeked->tokens.front().kind == TokenKind::KwElse) {
        if (peeked->tokens[1].kind != TokenKind::LBrace) {
          fail(peeked->line, peeked->tokens[1], "expected '{' after 'else'");
        }
        expect_end(*peeked, 2, "'else {'");
        node.else_line = peeked->line;
        has_else = true;
      } else {
        cursor_ = saved;
      }
    }

    if (has_else) {
      auto [else_body, else_end] = parse_block(depth + 1, *node.else_line);
      if (else_end.opens_else) {
        throw ParseError(else_end.line, 3, "'else' already given for this 'if'");
      }
      node.else_body = std::move(else_body);
      node.close_line = else_end.line;
    } else {
      node.close_line = then_end.line;
    }
    return Stmt{lt.line, std::move(node)};
  }

  Stmt parse_assign(const LineTokens& lt) {
    const Token& name = lt.tokens[0];
    if (lt.tokens[1].kind != TokenKind::Assign) {
      fail(lt.line, lt.tokens[1],
           "expected '=' after '" + name.text + "', found " +
               std::string(describe(lt.tokens[1].kind)));
    }
    ExprParser ep(lt.tokens, 2, lt.line, reads_);
    ExprPtr value = ep.parse();
    std::size_t pos = ep.position();
    if (lt.tokens[pos].kind == TokenKind::Semicolon) ++pos;
    expect_end(lt, pos, "assignment");
    assigned_.push_back(name.text);
    return Stmt{lt.line, Assign{name.text, std::move(value)}};
  }

  const SourceProgram& source_;
  int cursor_ = 1;
  std::vector<std::string> assigned_;
  std::vector<std::string> reads_;
};

}  // namespace

Program parse(const SourceProgram& source) {
  if (source.text().empty()) throw ParseError(1, 1, "empty source");
  return Parser(source).run();
}

Program parse(std::string_view text) { return parse(SourceProgram(text)); }

}  // namespace line_explorer::lang
