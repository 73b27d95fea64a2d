#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>

namespace line_explorer::lang {

// A runtime value of the teaching language: a signed 64-bit integer or a boolean.
class Value {
 public:
  Value() = default;
  static Value integer(std::int64_t v) { return Value(v); }
  static Value boolean(bool v) { return Value(v); }

  bool is_int() const noexcept { return std::holds_alternative<std::int64_t>(v_); }
  bool is_bool() const noexcept { return std::holds_alternative<bool>(v_); }
  std::int64_t as_int() const { return std::get<std::int64_t>(v_); }
  bool as_bool() const { return std::get<bool>(v_); }

  // Decimal for integers, `true`/`false` for booleans.
  std::string render() const;

  bool operator==(const Value&) const = default;

 private:
  explicit Value(std::int64_t v) : v_(v) {}
  explicit Value(bool v) : v_(v) {}
  std::variant<std::int64_t, bool> v_{std::int64_t{0}};
};

// Variable name -> value. Ordered by name so snapshots compare and print stably.
using Environment = std::map<std::string, Value>;

// Parses an integer or boolean literal as written in an environment assignment
// (`n=3`, `done=false`). Returns nullopt for anything else.
std::optional<Value> parse_value_literal(std::string_view text);

}  // namespace line_explorer::lang
