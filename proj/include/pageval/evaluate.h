#pragma once

#include <string>
#include <vector>

#include "pageval/page_io.h"
#include "pageval/tokenizer.h"
#include "pageval/types.h"

namespace pageval {

// One engine call: the exact reading-order solver when cfg.readingOrder is
// set, the greedy assignment otherwise. Character/word levels only.
EvalResult evaluatePair(const Page& hyp, const Page& gt, const MeasureConfig& cfg);

struct PageReport {
  std::string id;
  ErrorCounts counts;  // character/word levels
  BowCounts bow;       // bag-of-words level
  Alignment alignment;
};

struct Report {
  MeasureConfig config;
  std::string measure;  // e.g. "CER^R", "WER^{S,G}", "BOW"
  std::vector<PageReport> pages;
  ErrorCounts totalCounts;
  BowCounts totalBow;
};

// Label of the configured measure: level acronym plus the active
// restrictions (reading order R, segmentation S, geometry G).
std::string measureLabel(const MeasureConfig& cfg);

// Pages are distributed over up to `jobs` threads (0: hardware concurrency);
// the report order is the test-set order regardless.
Report evaluateTestSet(const TestSet& testSet, const MeasureConfig& cfg, int jobs = 1);

// Stable-keyed, newline-terminated JSON; byte-identical for identical inputs.
std::string renderJson(const Report& report);
// Fixed-width table: one row per page plus a total row.
std::string renderTable(const Report& report);
// Full per-page alignment detail (0-based indices) for --dump-alignment.
std::string renderAlignmentJson(const Report& report);

}  // namespace pageval
