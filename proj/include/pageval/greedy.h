#pragma once

#include <vector>

#include "pageval/types.h"

namespace pageval {

// Greedy assignment without the reading-order restriction: repeatedly commits
// the lowest-error (gt line, hypothesis unit) pair until nothing is left to
// assign. Units are whole free lines, or line segments bounded at token
// boundaries when cfg.segmentation is set. An upper bound of the optimal
// unrestricted assignment. Requires !cfg.readingOrder and a character or word
// level.
EvalResult greedyLd(const Page& hyp, const Page& gt, const MeasureConfig& cfg,
                    const std::vector<std::vector<char>>* neighbors = nullptr);

}  // namespace pageval
