#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pageval {

// Raised for invalid measure configurations (unknown tokenizer, geometry
// requested on lines without baselines, ...).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised for malformed input documents. Messages carry a location when known.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when an evaluation cannot produce a result (undefined rates, ...).
struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Point {
  double x = 0;
  double y = 0;
};

// Polyline under a line of text, in image coordinates. Invariant: at least
// one point, consecutive duplicate points removed.
using Baseline = std::vector<Point>;

// One line of transcribed text. `text` is UTF-8, holds no newline characters,
// and has no leading/trailing U+0020 (parsers enforce both).
struct Line {
  std::string text;
  std::optional<Baseline> baseline;
  std::string id;
};

// Lines in reading order. An empty page has zero lines.
struct Page {
  std::string id;
  std::vector<Line> lines;
};

enum class Level { Character, Word, BagOfWords };

struct MeasureConfig {
  Level level = Level::Character;
  bool readingOrder = true;
  bool geometry = false;
  bool segmentation = false;
  std::string tokenizer = "space";
  double toleranceFraction = 0.25;
  double toleranceCap = 30.0;
};

// Edit-operation tallies. Lengths are weighted symbol counts (code points at
// character level, tokens at word level). Identities maintained by every
// producer: cor + sub + del == hypLen (the aligned hypothesis), and
// cor + sub + ins == gtLen.
struct ErrorCounts {
  std::uint64_t ins = 0;
  std::uint64_t del = 0;
  std::uint64_t sub = 0;
  std::uint64_t cor = 0;
  std::uint64_t gtLen = 0;
  std::uint64_t hypLen = 0;

  std::uint64_t distance() const { return ins + del + sub; }
  bool operator==(const ErrorCounts&) const = default;
};

// Error rate relative to the ground truth; may exceed 1.
double errorRate(const ErrorCounts& c);
double precision(const ErrorCounts& c);
double recall(const ErrorCounts& c);
ErrorCounts aggregate(const std::vector<ErrorCounts>& perPage);

// Line-level assignment between a hypothesis page and a ground-truth page.
// Indices are 0-based. When `segmentedHyp` is set, hypothesis indices in
// `matched`/`unmatchedHyp` refer to its lines instead of the input's.
struct Alignment {
  std::vector<std::pair<int, int>> matched;   // (hyp, gt)
  std::vector<int> unmatchedHyp;
  std::vector<int> unmatchedGt;
  std::optional<Page> segmentedHyp;
};

struct EvalResult {
  std::uint64_t distance = 0;
  ErrorCounts counts;
  Alignment alignment;
};

}  // namespace pageval
