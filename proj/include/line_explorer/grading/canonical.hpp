#pragma once

#include <optional>
#include <string_view>

#include "line_explorer/lang/value.hpp"

namespace line_explorer::grading {

enum class EntryKind { Blank, Value, Invalid };

struct CanonicalEntry {
  EntryKind kind = EntryKind::Blank;
  lang::Value value;

  bool operator==(const CanonicalEntry&) const = default;
};

// Trims surrounding whitespace, then reads a decimal integer (sign and leading
// zeros allowed) or a case-insensitive true/false. An empty result is Blank.
CanonicalEntry canonicalize(std::string_view raw);

// Whether `raw` denotes `truth`; nullopt truth is matched only by a blank entry.
bool entry_matches(std::string_view raw, const std::optional<lang::Value>& truth);

}  // namespace line_explorer::grading
