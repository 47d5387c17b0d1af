#include "pageval/levenshtein.h"

#include "cells.h"
#include "pageval/utf8.h"

namespace pageval {

LevResult levenshtein(std::string_view hyp, std::string_view gt) {
  auto a = cells::charCells(utf8::decode(hyp));
  auto b = cells::charCells(utf8::decode(gt));
  std::vector<cells::EditOp> cellOps;
  auto r = cells::ldWithCounts(a, b, &cellOps);
  LevResult out;
  out.distance = r.distance;
  out.counts = r.counts;
  out.ops.reserve(cellOps.size());
  for (const auto& op : cellOps)
    out.ops.push_back({static_cast<EditKind>(op.kind), op.i, op.j});
  return out;
}

std::uint64_t levenshteinDistance(std::string_view hyp, std::string_view gt) {
  return cells::ld(cells::charCells(utf8::decode(hyp)),
                   cells::charCells(utf8::decode(gt)));
}

}  // namespace pageval
