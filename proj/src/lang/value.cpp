#include "line_explorer/lang/value.hpp"

#include <charconv>

namespace line_explorer::lang {

std::string Value::render() const {
  if (is_bool()) return as_bool() ? "true" : "false";
  return std::to_string(as_int());
}

std::optional<Value> parse_value_literal(std::string_view text) {
  if (text == "true") return Value::boolean(true);
  if (text == "false") return Value::boolean(false);
  if (text.empty()) return std::nullopt;
  std::string_view digits = text;
  if (digits.front() == '+') digits.remove_prefix(1);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || digits.empty()) return std::nullopt;
  return Value::integer(v);
}

}  // namespace line_explorer::lang
