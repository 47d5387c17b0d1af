#pragma once

// Engine-independent reference implementations used only by tests. They favor
// transparency over speed: plain tables, explicit enumeration of assignments,
// explicit enumeration of split/merge reinterpretations.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pageval/types.h"

namespace oracles {

// Unit-cost edit distance over code points, classic full table.
std::uint64_t charLd(const std::string& a, const std::string& b);

// Minimum assignment cost over all order-preserving partial matchings,
// enumerated recursively. Guard: at most 5 lines per side.
std::uint64_t bruteMonotone(const std::vector<std::string>& hyp,
                            const std::vector<std::string>& gt,
                            const std::vector<std::vector<char>>* neighbors = nullptr);

// Same minimum via a memoized recurrence; no size guard. Validated against
// bruteMonotone on small instances.
std::uint64_t monotoneAssignmentLd(const std::vector<std::string>& hyp,
                                   const std::vector<std::string>& gt,
                                   const std::vector<std::vector<char>>* neighbors = nullptr);

// Minimum assignment cost over all injective partial matchings, order-free.
// Guard: at most 5 ground-truth lines (hypothesis side may be longer).
std::uint64_t bruteUnrestricted(const std::vector<std::string>& hyp,
                                const std::vector<std::string>& gt);

// Minimum over every split/merge reinterpretation of the hypothesis:
// each separator slot (space or line break between content) independently
// becomes a space or a break, then the order-preserving assignment minimum
// is taken. Guard: at most 10 slots.
std::uint64_t bruteSeg(const std::vector<std::string>& hyp,
                       const std::vector<std::string>& gt);

// Same reinterpretation minimum with the order-free assignment inside.
// Guards: at most 6 slots and 5 ground-truth lines.
std::uint64_t bruteSegUnrestricted(const std::vector<std::string>& hyp,
                                   const std::vector<std::string>& gt);

pageval::Page makePage(const std::vector<std::string>& lines);

std::vector<std::string> randomLines(std::mt19937& rng, int maxLines, int maxLen);

struct RunResult {
  int exitCode;
  std::string output;  // stdout and stderr combined
};
RunResult runCommand(const std::string& cmd);

}  // namespace oracles
