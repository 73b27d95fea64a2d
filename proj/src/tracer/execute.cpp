#include "line_explorer/tracer/execute.hpp"

#include <functional>

namespace line_explorer::tracer {

std::string_view to_string(RuntimeErrorKind kind) {
  switch (kind) {
    case RuntimeErrorKind::DivisionByZero: return "division by zero";
    case RuntimeErrorKind::Overflow: return "integer overflow";
    case RuntimeErrorKind::TypeMismatch: return "type mismatch";
    case RuntimeErrorKind::UnassignedVariable: return "unassigned variable";
  }
  return "runtime error";
}

RuntimeError::RuntimeError(RuntimeErrorKind kind, int line, const std::string& message,
                           Trace partial)
    : Error("RuntimeError", "line " + std::to_string(line) + ": " + message),
      kind_(kind),
      line_(line),
      partial_(std::move(partial)) {}

namespace {

using lang::Binary;
using lang::BinaryOp;
using lang::Expr;
using lang::Stmt;

// Thrown from expression evaluation; rethrown as RuntimeError with the trace.
struct EvalFailure {
  RuntimeErrorKind kind;
  std::string message;
};

enum class OpKind { Assign, Branch, Jump };

struct Instr {
  OpKind kind = OpKind::Assign;
  int line = 0;
  const Expr* expr = nullptr;
  const std::string* target = nullptr;
  std::size_t jump = 0;    // Branch: where a false condition goes. Jump: destination.
  int loop = -1;           // while id for loop heads and their back edges
  bool back_edge = false;
};

class Compiler {
 public:
  std::vector<Instr> run(const std::vector<Stmt>& statements) {
    emit(statements);
    return std::move(code_);
  }

 private:
  void emit(const std::vector<Stmt>& body) {
    for (const auto& s : body) {
      if (const auto* a = std::get_if<lang::Assign>(&s.node)) {
        code_.push_back({OpKind::Assign, s.line, a->value.get(), &a->target});
      } else if (const auto* w = std::get_if<lang::While>(&s.node)) {
        const int id = next_loop_++;
        const std::size_t head = code_.size();
        code_.push_back({OpKind::Branch, s.line, w->condition.get(), nullptr, 0, id});
        emit(w->body);
        code_.push_back({OpKind::Jump, w->close_line, nullptr, nullptr, head, id, true});
        code_[head].jump = code_.size();
      } else {
        const auto& i = std::get<lang::If>(s.node);
        const std::size_t branch = code_.size();
        code_.push_back({OpKind::Branch, s.line, i.condition.get()});
        emit(i.then_body);
        if (!i.else_body.empty()) {
          const std::size_t skip = code_.size();
          code_.push_back({OpKind::Jump, i.close_line});
          code_[branch].jump = code_.size();
          emit(i.else_body);
          code_[skip].jump = code_.size();
        } else {
          code_[branch].jump = code_.size();
        }
      }
    }
  }

  std::vector<Instr> code_;
  int next_loop_ = 0;
};

std::int64_t need_int(const Value& v, BinaryOp op) {
  if (!v.is_int()) {
    throw EvalFailure{RuntimeErrorKind::TypeMismatch,
                      "operator '" + std::string(lang::symbol(op)) + "' needs integer operands"};
  }
  return v.as_int();
}

bool need_bool(const Value& v, std::string_view what) {
  if (!v.is_bool()) {
    throw EvalFailure{RuntimeErrorKind::TypeMismatch, std::string(what) + " needs a boolean"};
  }
  return v.as_bool();
}

Value evaluate(const Expr& e, const Environment& env);

Value evaluate_binary(const Binary& b, const Environment& env) {
  if (b.op == BinaryOp::And || b.op == BinaryOp::Or) {
    const std::string what = "operator '" + std::string(lang::symbol(b.op)) + "'";
    const bool lhs = need_bool(evaluate(*b.lhs, env), what);
    if (b.op == BinaryOp::And && !lhs) return Value::boolean(false);
    if (b.op == BinaryOp::Or && lhs) return Value::boolean(true);
    return Value::boolean(need_bool(evaluate(*b.rhs, env), what));
  }

  const Value lv = evaluate(*b.lhs, env);
  const Value rv = evaluate(*b.rhs, env);
  if (b.op == BinaryOp::Equal || b.op == BinaryOp::NotEqual) {
    if (lv.is_int() != rv.is_int()) {
      throw EvalFailure{RuntimeErrorKind::TypeMismatch, "cannot compare an integer with a boolean"};
    }
    return Value::boolean((lv == rv) == (b.op == BinaryOp::Equal));
  }

  const std::int64_t l = need_int(lv, b.op);
  const std::int64_t r = need_int(rv, b.op);
  std::int64_t out = 0;
  auto overflow = [&]() -> EvalFailure {
    return {RuntimeErrorKind::Overflow, std::to_string(l) + " " + std::string(lang::symbol(b.op)) +
                                            " " + std::to_string(r) + " overflows 64 bits"};
  };
  switch (b.op) {
    case BinaryOp::Add:
      if (__builtin_add_overflow(l, r, &out)) throw overflow();
      return Value::integer(out);
    case BinaryOp::Sub:
      if (__builtin_sub_overflow(l, r, &out)) throw overflow();
      return Value::integer(out);
    case BinaryOp::Mul:
      if (__builtin_mul_overflow(l, r, &out)) throw overflow();
      return Value::integer(out);
    case BinaryOp::Div:
      if (r == 0) throw EvalFailure{RuntimeErrorKind::DivisionByZero, "division by zero"};
      if (l == INT64_MIN && r == -1) throw overflow();
      return Value::integer(l / r);
    case BinaryOp::Mod:
      if (r == 0) throw EvalFailure{RuntimeErrorKind::DivisionByZero, "remainder by zero"};
      return Value::integer(r == -1 ? 0 : l % r);
    case BinaryOp::Less: return Value::boolean(l < r);
    case BinaryOp::LessEq: return Value::boolean(l <= r);
    case BinaryOp::Greater: return Value::boolean(l > r);
    case BinaryOp::GreaterEq: return Value::boolean(l >= r);
    default: break;
  }
  throw EvalFailure{RuntimeErrorKind::TypeMismatch, "unsupported operator"};
}

Value evaluate(const Expr& e, const Environment& env) {
  return std::visit(
      [&](const auto& n) -> Value {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, lang::IntLiteral>) {
          return Value::integer(n.value);
        } else if constexpr (std::is_same_v<T, lang::BoolLiteral>) {
          return Value::boolean(n.value);
        } else if constexpr (std::is_same_v<T, lang::VarRef>) {
          auto it = env.find(n.name);
          if (it == env.end()) {
            throw EvalFailure{RuntimeErrorKind::UnassignedVariable,
                              "'" + n.name + "' has no value yet"};
          }
          return it->second;
        } else if constexpr (std::is_same_v<T, lang::Unary>) {
          const Value v = evaluate(*n.operand, env);
          if (n.op == lang::UnaryOp::Not) return Value::boolean(!need_bool(v, "operator 'not'"));
          if (!v.is_int()) {
            throw EvalFailure{RuntimeErrorKind::TypeMismatch, "negation needs an integer"};
          }
          if (v.as_int() == INT64_MIN) {
            throw EvalFailure{RuntimeErrorKind::Overflow, "negating " + v.render() + " overflows"};
          }
          return Value::integer(-v.as_int());
        } else {
          return evaluate_binary(n, env);
        }
      },
      e.node);
}

struct LoopFrame {
  int loop;
  int count;
};

}  // namespace

Trace execute(const lang::Program& program, const Environment& initial_env,
              ExecutionLimits limits) {
  const std::vector<Instr> code = Compiler().run(program.statements);
  const std::size_t max_steps = static_cast<std::size_t>(std::max(1, limits.max_steps));

  Trace trace;
  trace.columns = trace_columns(program, initial_env);

  // First non-jump instruction at or after `pc`; code.size() means END.
  auto settle = [&](std::size_t pc) {
    while (pc < code.size() && code[pc].kind == OpKind::Jump) pc = code[pc].jump;
    return pc;
  };

  Environment env = initial_env;
  std::vector<LoopFrame> loops;
  int reentering = -1;
  std::size_t pc = 0;

  for (;;) {
    while (pc < code.size() && code[pc].kind == OpKind::Jump) {
      if (code[pc].back_edge) reentering = code[pc].loop;
      pc = code[pc].jump;
    }
    if (pc >= code.size()) break;

    const Instr& in = code[pc];
    std::size_t next = pc + 1;
    bool leaving_loop = false;
    try {
      if (in.kind == OpKind::Assign) {
        env[*in.target] = evaluate(*in.expr, env);
      } else {
        if (in.loop >= 0) {
          if (reentering == in.loop) ++loops.back().count;
          else loops.push_back({in.loop, 1});
          reentering = -1;
        }
        const bool taken = need_bool(evaluate(*in.expr, env),
                                     in.loop >= 0 ? "a while condition" : "an if condition");
        if (!taken) {
          next = in.jump;
          leaving_loop = in.loop >= 0;
        }
      }
    } catch (const EvalFailure& f) {
      throw RuntimeError(f.kind, in.line, f.message, std::move(trace));
    }

    TraceStep step;
    step.step_index = trace.steps.size();
    step.line = in.line;
    for (const auto& frame : loops) step.iteration.push_back(frame.count);
    step.env_after = env;
    const std::size_t settled = settle(next);
    if (settled < code.size()) step.next_line = code[settled].line;
    trace.steps.push_back(std::move(step));

    if (leaving_loop) loops.pop_back();
    pc = next;
    if (settled >= code.size()) break;
    if (trace.steps.size() >= max_steps) {
      trace.terminated = Termination::StepLimit;
      break;
    }
  }
  return trace;
}

}  // namespace line_explorer::tracer
