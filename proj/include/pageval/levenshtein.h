#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "pageval/types.h"

namespace pageval {

enum class EditKind : std::uint8_t { Match, Substitute, Delete, Insert };

// One aligned edit step; indices are 0-based code-point positions, -1 on the
// side an Insert/Delete does not touch.
struct EditOp {
  EditKind kind;
  int hypIndex;
  int gtIndex;
};

struct LevResult {
  std::uint64_t distance = 0;
  ErrorCounts counts;
  std::vector<EditOp> ops;
};

// Unit-cost edit distance over code points. Ties in the backtrace resolve
// match > substitution > delete > insert.
LevResult levenshtein(std::string_view hyp, std::string_view gt);
std::uint64_t levenshteinDistance(std::string_view hyp, std::string_view gt);

}  // namespace pageval
