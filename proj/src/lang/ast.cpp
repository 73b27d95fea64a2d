#include "line_explorer/lang/ast.hpp"

#include <algorithm>
#include <functional>

namespace line_explorer::lang {

std::string_view symbol(UnaryOp op) {
  return op == UnaryOp::Negate ? "-" : "not";
}

std::string_view symbol(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Mod: return "%";
    case BinaryOp::Less: return "<";
    case BinaryOp::LessEq: return "<=";
    case BinaryOp::Greater: return ">";
    case BinaryOp::GreaterEq: return ">=";
    case BinaryOp::Equal: return "==";
    case BinaryOp::NotEqual: return "!=";
    case BinaryOp::And: return "and";
    case BinaryOp::Or: return "or";
  }
  return "?";
}

ExprPtr make_int(std::int64_t v, int column) {
  return std::make_shared<const Expr>(Expr{IntLiteral{v}, column});
}
ExprPtr make_bool(bool v, int column) {
  return std::make_shared<const Expr>(Expr{BoolLiteral{v}, column});
}
ExprPtr make_var(std::string name, int column) {
  return std::make_shared<const Expr>(Expr{VarRef{std::move(name)}, column});
}
ExprPtr make_unary(UnaryOp op, ExprPtr operand, int column) {
  return std::make_shared<const Expr>(Expr{Unary{op, std::move(operand)}, column});
}
ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs, int column) {
  return std::make_shared<const Expr>(Expr{Binary{op, std::move(lhs), std::move(rhs)}, column});
}

bool same_expr(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return a == b;
  return same_expr(*a, *b);
}

bool same_expr(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& lhs) -> bool {
        using T = std::decay_t<decltype(lhs)>;
        const auto& rhs = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, IntLiteral> || std::is_same_v<T, BoolLiteral>) {
          return lhs.value == rhs.value;
        } else if constexpr (std::is_same_v<T, VarRef>) {
          return lhs.name == rhs.name;
        } else if constexpr (std::is_same_v<T, Unary>) {
          return lhs.op == rhs.op && same_expr(lhs.operand, rhs.operand);
        } else {
          return lhs.op == rhs.op && same_expr(lhs.lhs, rhs.lhs) && same_expr(lhs.rhs, rhs.rhs);
        }
      },
      a.node);
}

std::string to_string(const Expr& e) {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, IntLiteral>) {
          return std::to_string(n.value);
        } else if constexpr (std::is_same_v<T, BoolLiteral>) {
          return n.value ? "true" : "false";
        } else if constexpr (std::is_same_v<T, VarRef>) {
          return n.name;
        } else if constexpr (std::is_same_v<T, Unary>) {
          std::string op(symbol(n.op));
          if (n.op == UnaryOp::Not) op += ' ';
          return "(" + op + to_string(*n.operand) + ")";
        } else {
          return "(" + to_string(*n.lhs) + " " + std::string(symbol(n.op)) + " " +
                 to_string(*n.rhs) + ")";
        }
      },
      e.node);
}

namespace {

bool same_body(const std::vector<Stmt>& a, const std::vector<Stmt>& b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

void walk(const std::vector<Stmt>& body, const std::function<void(const Stmt&, int)>& fn,
          int depth) {
  for (const auto& s : body) {
    fn(s, depth);
    if (const auto* w = std::get_if<While>(&s.node)) {
      walk(w->body, fn, depth + 1);
    } else if (const auto* i = std::get_if<If>(&s.node)) {
      walk(i->then_body, fn, depth);
      walk(i->else_body, fn, depth);
    }
  }
}

}  // namespace

bool operator==(const Stmt& a, const Stmt& b) {
  if (a.line != b.line || a.node.index() != b.node.index()) return false;
  if (const auto* x = std::get_if<Assign>(&a.node)) {
    const auto& y = std::get<Assign>(b.node);
    return x->target == y.target && same_expr(x->value, y.value);
  }
  if (const auto* x = std::get_if<While>(&a.node)) {
    const auto& y = std::get<While>(b.node);
    return x->close_line == y.close_line && same_expr(x->condition, y.condition) &&
           same_body(x->body, y.body);
  }
  const auto& x = std::get<If>(a.node);
  const auto& y = std::get<If>(b.node);
  return x.close_line == y.close_line && x.else_line == y.else_line &&
         same_expr(x.condition, y.condition) && same_body(x.then_body, y.then_body) &&
         same_body(x.else_body, y.else_body);
}

bool Program::operator==(const Program& other) const {
  return declared_variables == other.declared_variables &&
         same_body(statements, other.statements);
}

std::vector<int> executable_lines(const Program& program) {
  std::vector<int> lines;
  walk(program.statements, [&](const Stmt& s, int) { lines.push_back(s.line); }, 0);
  std::sort(lines.begin(), lines.end());
  return lines;
}

std::vector<LoopSpan> loop_spans(const Program& program) {
  std::vector<LoopSpan> spans;
  walk(
      program.statements,
      [&](const Stmt& s, int depth) {
        if (const auto* w = std::get_if<While>(&s.node)) {
          spans.push_back({s.line, w->close_line, depth + 1});
        }
      },
      0);
  std::sort(spans.begin(), spans.end(),
            [](const LoopSpan& a, const LoopSpan& b) { return a.head_line < b.head_line; });
  return spans;
}

int loop_depth(const Program& program, int line) {
  int depth = 0;
  for (const auto& span : loop_spans(program)) {
    if (span.contains(line)) ++depth;
  }
  return depth;
}

const Stmt* statement_at(const Program& program, int line) {
  const Stmt* found = nullptr;
  walk(program.statements, [&](const Stmt& s, int) {
    if (s.line == line) found = &s;
  }, 0);
  return found;
}

}  // namespace line_explorer::lang
