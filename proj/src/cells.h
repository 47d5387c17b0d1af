#pragma once

// Internal unified symbol model. Both evaluation levels reduce to "cell"
// sequences: code points at character level (U+0020 becomes a weight-1
// separator cell), interned tokens at word level (weight-1 token cells with
// zero-weight separator cells between them). All distances, error counts and
// denominators are weighted sums over cells, so one edit-distance core serves
// both levels.

#include <cstdint>
#include <string>
#include <vector>

#include "pageval/types.h"

namespace pageval::cells {

enum class Kind : std::uint8_t { Plain, Sep, Break };

struct Cell {
  std::uint32_t sym = 0;
  Kind kind = Kind::Plain;
  std::uint8_t weight = 1;

  bool operator==(const Cell&) const = default;
};

constexpr std::uint32_t kBreakSym = 0xFFFFFFFFu;
constexpr std::uint32_t kWordSepSym = 0xFFFFFFFEu;

using CellLine = std::vector<Cell>;

CellLine charCells(const std::vector<std::uint32_t>& codePoints);
CellLine wordCells(const std::vector<std::uint32_t>& tokenIds);
std::uint64_t lineWeight(const CellLine& line);

enum class OpKind : std::uint8_t { Match, Substitute, Delete, Insert };

struct EditOp {
  OpKind kind;
  int i;  // position in `a`, -1 for Insert
  int j;  // position in `b`, -1 for Delete
};

struct LdCounts {
  std::uint64_t distance = 0;
  ErrorCounts counts;  // gtLen/hypLen filled from the operands (b is gt)
};

// Weighted edit distance between break-free cell lines: match 0, substitution
// 1 between weight-1 cells, delete/insert at cell weight. Backtrace ties
// resolve match > substitution > delete > insert.
LdCounts ldWithCounts(const CellLine& a, const CellLine& b,
                      std::vector<EditOp>* ops = nullptr);
std::uint64_t ld(const CellLine& a, const CellLine& b);

// Cell lines for a hypothesis/ground-truth page pair at the configured level.
// Word level tokenizes with cfg.tokenizer and interns tokens jointly, so equal
// tokens share ids across the two pages. sepWeight is the weight a separator
// carries at this level (1 character, 0 word).
struct PairCells {
  std::vector<CellLine> hyp;
  std::vector<CellLine> gt;
  std::vector<std::string> vocab;  // token id -> text (word level)
  int sepWeight = 1;
  bool wordLevel = false;
};

PairCells buildPairCells(const Page& hyp, const Page& gt, const MeasureConfig& cfg);

// Display text of a cell line (used for segmented-hypothesis output).
std::string cellLineText(const CellLine& line, const PairCells& ctx);

}  // namespace pageval::cells
