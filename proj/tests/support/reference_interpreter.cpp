#include "reference_interpreter.hpp"

#include <sstream>

#include "line_explorer/tracer/execute.hpp"

namespace line_explorer::support {

namespace {

using lang::Value;

struct Stop {};
struct Fail {
  std::string kind;
};

class Walker {
 public:
  Walker(lang::Environment env, std::size_t cap) : env_(std::move(env)), cap_(cap) {}

  void block(const std::vector<lang::Stmt>& body) {
    for (const auto& s : body) statement(s);
  }

  std::vector<tracer::TraceStep> steps;
  int current_line = 0;

 private:
  void statement(const lang::Stmt& s) {
    current_line = s.line;
    if (const auto* a = std::get_if<lang::Assign>(&s.node)) {
      env_[a->target] = eval(*a->value);
      record(s.line);
    } else if (const auto* w = std::get_if<lang::While>(&s.node)) {
      iters_.push_back(0);
      for (;;) {
        ++iters_.back();
        current_line = s.line;
        const bool go = truth(eval(*w->condition));
        record(s.line);
        if (!go) break;
        block(w->body);
      }
      iters_.pop_back();
    } else {
      const auto& i = std::get<lang::If>(s.node);
      const bool go = truth(eval(*i.condition));
      record(s.line);
      block(go ? i.then_body : i.else_body);
    }
  }

  void record(int line) {
    if (steps.size() >= cap_) throw Stop{};
    tracer::TraceStep st;
    st.step_index = steps.size();
    st.line = line;
    st.iteration = iters_;
    st.env_after = env_;
    steps.push_back(std::move(st));
  }

  static bool truth(const Value& v) {
    if (!v.is_bool()) throw Fail{"type mismatch"};
    return v.as_bool();
  }

  static std::int64_t narrow(__int128 wide) {
    if (wide > INT64_MAX || wide < INT64_MIN) throw Fail{"integer overflow"};
    return static_cast<std::int64_t>(wide);
  }

  Value eval(const lang::Expr& e) {
    if (const auto* lit = std::get_if<lang::IntLiteral>(&e.node)) return Value::integer(lit->value);
    if (const auto* lit = std::get_if<lang::BoolLiteral>(&e.node)) return Value::boolean(lit->value);
    if (const auto* ref = std::get_if<lang::VarRef>(&e.node)) {
      if (!env_.count(ref->name)) throw Fail{"unassigned variable"};
      return env_.at(ref->name);
    }
    if (const auto* u = std::get_if<lang::Unary>(&e.node)) {
      Value v = eval(*u->operand);
      if (u->op == lang::UnaryOp::Not) return Value::boolean(!truth(v));
      if (!v.is_int()) throw Fail{"type mismatch"};
      return Value::integer(narrow(-static_cast<__int128>(v.as_int())));
    }
    const auto& b = std::get<lang::Binary>(e.node);
    using Op = lang::BinaryOp;
    if (b.op == Op::And) return Value::boolean(truth(eval(*b.lhs)) ? truth(eval(*b.rhs)) : false);
    if (b.op == Op::Or) return Value::boolean(truth(eval(*b.lhs)) ? true : truth(eval(*b.rhs)));
    Value l = eval(*b.lhs);
    Value r = eval(*b.rhs);
    if (b.op == Op::Equal || b.op == Op::NotEqual) {
      if (l.is_bool() != r.is_bool()) throw Fail{"type mismatch"};
      const bool same = l.is_bool() ? l.as_bool() == r.as_bool() : l.as_int() == r.as_int();
      return Value::boolean(b.op == Op::Equal ? same : !same);
    }
    if (!l.is_int() || !r.is_int()) throw Fail{"type mismatch"};
    const __int128 x = l.as_int();
    const __int128 y = r.as_int();
    switch (b.op) {
      case Op::Add: return Value::integer(narrow(x + y));
      case Op::Sub: return Value::integer(narrow(x - y));
      case Op::Mul: return Value::integer(narrow(x * y));
      case Op::Div:
        if (y == 0) throw Fail{"division by zero"};
        return Value::integer(narrow(x / y));
      case Op::Mod:
        if (y == 0) throw Fail{"division by zero"};
        return Value::integer(narrow(x % y));
      case Op::Less: return Value::boolean(x < y);
      case Op::LessEq: return Value::boolean(x <= y);
      case Op::Greater: return Value::boolean(x > y);
      case Op::GreaterEq: return Value::boolean(x >= y);
      default: throw Fail{"type mismatch"};
    }
  }

  lang::Environment env_;
  std::vector<int> iters_;
  std::size_t cap_;
};

}  // namespace

RefOutcome reference_run(const lang::Program& program, const lang::Environment& env,
                         int max_steps) {
  RefOutcome out;
  // One step past the limit tells a program that stops exactly at the limit
  // from one that would keep going.
  Walker w(env, static_cast<std::size_t>(max_steps) + 1);
  std::optional<int> follow_line;
  try {
    w.block(program.statements);
  } catch (const Stop&) {
  } catch (const Fail& f) {
    out.error_line = w.current_line;
    out.error_kind = f.kind;
    follow_line = w.current_line;
  }
  out.steps = std::move(w.steps);
  if (out.steps.size() > static_cast<std::size_t>(max_steps)) {
    out.hit_limit = true;
    follow_line = out.steps[static_cast<std::size_t>(max_steps)].line;
    out.steps.resize(static_cast<std::size_t>(max_steps));
  }
  for (std::size_t k = 0; k < out.steps.size(); ++k) {
    if (k + 1 < out.steps.size()) out.steps[k].next_line = out.steps[k + 1].line;
    else out.steps[k].next_line = follow_line;
  }
  return out;
}

namespace {

std::string describe_step(const tracer::TraceStep& s) {
  std::ostringstream o;
  o << "#" << s.step_index << " line " << s.line << " iter [" << tracer::dotted(s.iteration)
    << "] next " << (s.next_line ? std::to_string(*s.next_line) : "END") << " {";
  for (const auto& [k, v] : s.env_after) o << k << "=" << v.render() << " ";
  o << "}";
  return o.str();
}

std::string compare_steps(const std::vector<tracer::TraceStep>& got,
                          const std::vector<tracer::TraceStep>& want) {
  for (std::size_t k = 0; k < std::min(got.size(), want.size()); ++k) {
    if (!(got[k] == want[k])) {
      return "step mismatch: tracer " + describe_step(got[k]) + " vs reference " +
             describe_step(want[k]);
    }
  }
  if (got.size() != want.size()) {
    return "step count: tracer " + std::to_string(got.size()) + " vs reference " +
           std::to_string(want.size());
  }
  return {};
}

}  // namespace

std::string compare_with_tracer(const lang::Program& program, const lang::Environment& env,
                                int max_steps) {
  const RefOutcome ref = reference_run(program, env, max_steps);
  try {
    const tracer::Trace trace = tracer::execute(program, env, {max_steps});
    if (ref.error_line) return "reference failed (" + ref.error_kind + ") but tracer did not";
    const bool limited = trace.terminated == tracer::Termination::StepLimit;
    if (limited != ref.hit_limit) return "termination differs";
    return compare_steps(trace.steps, ref.steps);
  } catch (const tracer::RuntimeError& e) {
    if (!ref.error_line) return std::string("tracer failed but reference did not: ") + e.what();
    if (e.line() != *ref.error_line) return "error line differs";
    if (std::string(tracer::to_string(e.kind())) != ref.error_kind) {
      return "error kind differs: " + std::string(tracer::to_string(e.kind())) + " vs " +
             ref.error_kind;
    }
    return compare_steps(e.partial_trace().steps, ref.steps);
  }
}

}  // namespace line_explorer::support
