#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace line_explorer::lang {

enum class UnaryOp { Negate, Not };

enum class BinaryOp {
  Add, Sub, Mul, Div, Mod,
  Less, LessEq, Greater, GreaterEq, Equal, NotEqual,
  And, Or,
};

std::string_view symbol(UnaryOp op);
std::string_view symbol(BinaryOp op);

struct Expr;
// Expression nodes are immutable once built, so children are shared.
using ExprPtr = std::shared_ptr<const Expr>;

struct IntLiteral {
  std::int64_t value;
};
struct BoolLiteral {
  bool value;
};
struct VarRef {
  std::string name;
};
struct Unary {
  UnaryOp op;
  ExprPtr operand;
};
struct Binary {
  BinaryOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};

struct Expr {
  std::variant<IntLiteral, BoolLiteral, VarRef, Unary, Binary> node;
  int column = 0;
};

ExprPtr make_int(std::int64_t v, int column = 0);
ExprPtr make_bool(bool v, int column = 0);
ExprPtr make_var(std::string name, int column = 0);
ExprPtr make_unary(UnaryOp op, ExprPtr operand, int column = 0);
ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs, int column = 0);

// Structural equality. Columns are ignored.
bool same_expr(const Expr& a, const Expr& b);
bool same_expr(const ExprPtr& a, const ExprPtr& b);

// Fully parenthesized rendering, e.g. `((i + 1) < n)`.
std::string to_string(const Expr& e);

struct Stmt;

struct Assign {
  std::string target;
  ExprPtr value;
};

struct While {
  ExprPtr condition;
  std::vector<Stmt> body;
  int close_line = 0;
};

struct If {
  ExprPtr condition;
  std::vector<Stmt> then_body;
  std::vector<Stmt> else_body;
  std::optional<int> else_line;
  int close_line = 0;
};

struct Stmt {
  int line = 0;
  std::variant<Assign, While, If> node;
};

bool operator==(const Stmt& a, const Stmt& b);

struct Program {
  std::vector<Stmt> statements;
  // Assignment targets in first-assignment order, then names that are only read.
  std::vector<std::string> declared_variables;

  bool operator==(const Program& other) const;
};

// Line range of one `while` loop: the condition line and its closing brace.
struct LoopSpan {
  int head_line = 0;
  int close_line = 0;
  int depth = 1;  // 1 for a top-level loop

  bool contains(int line) const { return line >= head_line && line <= close_line; }
  bool operator==(const LoopSpan&) const = default;
};

// Executable (statement-carrying) lines in ascending order.
std::vector<int> executable_lines(const Program& program);

// Every while loop in source order.
std::vector<LoopSpan> loop_spans(const Program& program);

// Number of while loops enclosing `line`; a while's own condition line counts itself.
int loop_depth(const Program& program, int line);

// The statement at `line`, or nullptr.
const Stmt* statement_at(const Program& program, int line);

}  // namespace line_explorer::lang
