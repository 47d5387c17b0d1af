#pragma once

#include <cstdint>
#include <vector>

#include "pageval/types.h"

namespace pageval {

inline constexpr std::uint32_t kLineBreak = 0xFFFFFFFFu;
inline constexpr std::uint32_t kInfiniteCost = 0xFFFFFFFFu;

// A page as one symbol stream with break markers before, between and after
// the lines; an empty page is a single break. `breaks` holds the 0-based
// positions of the break markers, `extBreaks` additionally the positions of
// spaces (the candidate cut points under segmentation).
struct FlatSequence {
  std::vector<std::uint32_t> chars;
  std::vector<std::size_t> breaks;
  std::vector<std::size_t> extBreaks;
};

FlatSequence flatten(const Page& page);
Page unflatten(const FlatSequence& seq);

// Block-internal alignment cost of hypothesis symbol hi against ground-truth
// symbol gj. Under segmentation a separator slot between lines may merge into
// a ground-truth space for free, or stand in for an ordinary symbol at cost 1;
// the engine applies this only to interior slots, never to page-edge breaks.
std::uint32_t substitutionCost(std::uint32_t hi, std::uint32_t gj, bool segmentation);

struct DpOptions {
  // Fill the full O(|h|*|g|) table instead of running the shortest-path
  // search; kept as an in-tree cross-check, sizes permitting.
  bool fullTable = false;
};

// Exact evaluation under reading order, optionally geometry-restricted and
// segmentation-tolerant. Requires cfg.readingOrder and a character or word
// level. When cfg.geometry is set and `neighbors` is null, the admissibility
// matrix is computed from the pages' baselines.
EvalResult solve(const Page& hyp, const Page& gt, const MeasureConfig& cfg,
                 const std::vector<std::vector<char>>* neighbors = nullptr,
                 const DpOptions& opts = {});

}  // namespace pageval
