#include "line_explorer/grading/canonical.hpp"

#include <cctype>
#include <charconv>

namespace line_explorer::grading {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) != b[i]) return false;
  }
  return true;
}

}  // namespace

CanonicalEntry canonicalize(std::string_view raw) {
  std::string_view s = trim(raw);
  if (s.empty()) return {EntryKind::Blank, {}};
  if (iequals(s, "true")) return {EntryKind::Value, lang::Value::boolean(true)};
  if (iequals(s, "false")) return {EntryKind::Value, lang::Value::boolean(false)};

  std::string_view digits = s;
  if (digits.front() == '+') digits.remove_prefix(1);
  if (digits.empty() || !(std::isdigit(static_cast<unsigned char>(digits.front())) ||
                          (digits.front() == '-' && digits.size() == s.size()))) {
    return {EntryKind::Invalid, {}};
  }
  std::int64_t v = 0;
  auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (ec != std::errc() || end != digits.data() + digits.size()) return {EntryKind::Invalid, {}};
  return {EntryKind::Value, lang::Value::integer(v)};
}

bool entry_matches(std::string_view raw, const std::optional<lang::Value>& truth) {
  CanonicalEntry e = canonicalize(raw);
  if (!truth) return e.kind == EntryKind::Blank;
  return e.kind == EntryKind::Value && e.value == *truth;
}

}  // namespace line_explorer::grading
