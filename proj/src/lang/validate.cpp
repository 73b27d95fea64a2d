#include "line_explorer/lang/validate.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace line_explorer::lang {

std::string_view to_string(ExerciseMode mode) {
  return mode == ExerciseMode::Demonstration ? "demonstration" : "evaluation";
}

std::string format(const Diagnostic& d) {
  return "line " + std::to_string(d.line) + ": " +
         (d.severity == Severity::Error ? "error: " : "warning: ") + d.message + " [" + d.code +
         "]";
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

namespace {

using Names = std::set<std::string>;

// Value of an integer subexpression built only from literals, if it has one.
std::optional<std::int64_t> fold_constant(const Expr& e) {
  if (const auto* lit = std::get_if<IntLiteral>(&e.node)) return lit->value;
  if (const auto* u = std::get_if<Unary>(&e.node)) {
    if (u->op != UnaryOp::Negate) return std::nullopt;
    auto v = fold_constant(*u->operand);
    if (!v || *v == INT64_MIN) return std::nullopt;
    return -*v;
  }
  if (const auto* b = std::get_if<Binary>(&e.node)) {
    auto l = fold_constant(*b->lhs);
    auto r = fold_constant(*b->rhs);
    if (!l || !r) return std::nullopt;
    std::int64_t out = 0;
    switch (b->op) {
      case BinaryOp::Add:
        if (__builtin_add_overflow(*l, *r, &out)) return std::nullopt;
        return out;
      case BinaryOp::Sub:
        if (__builtin_sub_overflow(*l, *r, &out)) return std::nullopt;
        return out;
      case BinaryOp::Mul:
        if (__builtin_mul_overflow(*l, *r, &out)) return std::nullopt;
        return out;
      case BinaryOp::Div:
        if (*r == 0 || (*l == INT64_MIN && *r == -1)) return std::nullopt;
        return *l / *r;
      case BinaryOp::Mod:
        if (*r == 0) return std::nullopt;
        if (*r == -1) return 0;
        return *l % *r;
      default:
        return std::nullopt;
    }
  }
  return std::nullopt;
}

class Checker {
 public:
  Checker(const Environment& env, ExerciseMode mode) : mode_(mode) {
    for (const auto& [name, _] : env) initial_.insert(name);
  }

  std::vector<Diagnostic> run(const Program& program) {
    if (program.statements.empty()) {
      error(1, "program has no executable statements", "empty-program");
      return std::move(diags_);
    }
    Names assigned = initial_;
    block(program.statements, assigned, 0);
    std::stable_sort(diags_.begin(), diags_.end(),
                     [](const Diagnostic& a, const Diagnostic& b) { return a.line < b.line; });
    return std::move(diags_);
  }

 private:
  void error(int line, std::string message, std::string code) {
    diags_.push_back({Severity::Error, line, std::move(message), std::move(code)});
  }

  void check_expr(const Expr& e, int line, const Names& assigned) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, VarRef>) {
            if (!assigned.count(n.name) && reported_.insert({line, n.name}).second) {
              error(line, "'" + n.name + "' is read before it is assigned", "use-before-assign");
            }
          } else if constexpr (std::is_same_v<T, Unary>) {
            check_expr(*n.operand, line, assigned);
          } else if constexpr (std::is_same_v<T, Binary>) {
            check_expr(*n.lhs, line, assigned);
            check_expr(*n.rhs, line, assigned);
            if (n.op == BinaryOp::Div || n.op == BinaryOp::Mod) {
              auto divisor = fold_constant(*n.rhs);
              if (divisor && *divisor == 0) {
                error(line,
                      std::string(n.op == BinaryOp::Div ? "division" : "remainder") +
                          " by constant zero",
                      "constant-division-by-zero");
              }
            }
          }
        },
        e.node);
  }

  void block(const std::vector<Stmt>& body, Names& assigned, int loop_depth) {
    for (const auto& s : body) {
      if (const auto* a = std::get_if<Assign>(&s.node)) {
        check_expr(*a->value, s.line, assigned);
        assigned.insert(a->target);
      } else if (const auto* w = std::get_if<While>(&s.node)) {
        check_expr(*w->condition, s.line, assigned);
        if (mode_ == ExerciseMode::Evaluation && loop_depth >= 1) {
          error(s.line, "nested loops are not allowed in evaluation mode",
                "nested-loop-in-evaluation");
        }
        // The body may run zero times: its assignments do not escape.
        Names inner = assigned;
        block(w->body, inner, loop_depth + 1);
      } else {
        const auto& i = std::get<If>(s.node);
        check_expr(*i.condition, s.line, assigned);
        if (mode_ == ExerciseMode::Evaluation) {
          error(s.line, "conditionals are not allowed in evaluation mode",
                "conditional-in-evaluation");
        }
        Names then_names = assigned;
        Names else_names = assigned;
        block(i.then_body, then_names, loop_depth);
        block(i.else_body, else_names, loop_depth);
        Names both;
        std::set_intersection(then_names.begin(), then_names.end(), else_names.begin(),
                              else_names.end(), std::inserter(both, both.end()));
        assigned = std::move(both);
      }
    }
  }

  ExerciseMode mode_;
  Names initial_;
  std::set<std::pair<int, std::string>> reported_;
  std::vector<Diagnostic> diags_;
};

}  // namespace

std::vector<Diagnostic> validate(const Program& program, const Environment& initial_env,
                                 ExerciseMode mode) {
  return Checker(initial_env, mode).run(program);
}

}  // namespace line_explorer::lang
