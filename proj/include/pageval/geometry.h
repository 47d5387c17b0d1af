#pragma once

#include <cstddef>
#include <vector>

#include "pageval/types.h"

namespace pageval {

// Drops consecutive duplicate points. An empty result means no usable baseline.
Baseline normalizeBaseline(Baseline b);

// Admissible distance for ground-truth baseline #x: min(fraction * dNear, cap)
// where dNear is the closest distance from x's vertices to any *other*
// baseline in the list; cap when x is the only baseline.
double tolerance(const std::vector<Baseline>& gtBaselines, std::size_t x,
                 const MeasureConfig& cfg);

// Fraction of gt's resample points (1-px arc-length steps) within `tol` of
// the hyp polyline.
double coverage(const Baseline& hyp, const Baseline& gt, double tol);

bool isNeighbor(const Baseline& hyp, const Baseline& gt, double tol);

// neighbors[y][x]: hypothesis line y may be assigned to ground-truth line x.
// Throws ConfigError naming the first line that lacks a baseline.
std::vector<std::vector<char>> neighborMatrix(const Page& hyp, const Page& gt,
                                              const MeasureConfig& cfg);

}  // namespace pageval
