#include "pageval/greedy.h"

#include <algorithm>

#include "cells.h"
#include "pageval/geometry.h"

namespace pageval {

namespace {

using cells::Cell;
using cells::CellLine;
using cells::Kind;

struct Interval {
  std::size_t begin, end;  // half-open cell range
};

struct Candidate {
  double cer;
  std::uint64_t dist;
  int gtIdx;
  int line;
  std::size_t segBegin, segEnd;
};

bool candidateBefore(const Candidate& a, const Candidate& b) {
  if (a.cer != b.cer) return a.cer < b.cer;
  if (a.gtIdx != b.gtIdx) return a.gtIdx < b.gtIdx;
  if (a.line != b.line) return a.line < b.line;
  if (a.segBegin != b.segBegin) return a.segBegin < b.segBegin;
  return a.segEnd > b.segEnd;  // prefer the longer segment
}

// Maximal separator-free cell groups (the tokens) inside [begin, end).
std::vector<Interval> tokenGroups(const CellLine& line, std::size_t begin, std::size_t end) {
  std::vector<Interval> out;
  std::size_t p = begin;
  while (p < end) {
    if (line[p].kind == Kind::Sep) {
      ++p;
      continue;
    }
    std::size_t q = p;
    while (q < end && line[q].kind != Kind::Sep) ++q;
    out.push_back({p, q});
    p = q;
  }
  return out;
}

double cerKey(std::uint64_t dist, std::uint64_t gtWeight) {
  // Raw distance for empty ground-truth lines keeps the sort total.
  if (gtWeight == 0) return static_cast<double>(dist);
  return static_cast<double>(dist) / static_cast<double>(gtWeight);
}

}  // namespace

EvalResult greedyLd(const Page& hyp, const Page& gt, const MeasureConfig& cfg,
                    const std::vector<std::vector<char>>* neighbors) {
  if (cfg.readingOrder)
    throw ConfigError("greedy assignment is the order-free engine");
  if (cfg.level == Level::BagOfWords)
    throw ConfigError("bag-of-words level has no line alignment");

  std::vector<std::vector<char>> nbStorage;
  if (cfg.geometry) {
    if (!neighbors) {
      nbStorage = neighborMatrix(hyp, gt, cfg);
      neighbors = &nbStorage;
    }
  } else {
    neighbors = nullptr;
  }
  auto admissible = [&](int y, int x) {
    return !neighbors || (*neighbors)[y][x] != 0;
  };

  auto pc = cells::buildPairCells(hyp, gt, cfg);
  const int N = static_cast<int>(pc.hyp.size());
  const int M = static_cast<int>(pc.gt.size());
  std::vector<std::uint64_t> gtWeight(M);
  for (int x = 0; x < M; ++x) gtWeight[x] = cells::lineWeight(pc.gt[x]);

  std::vector<char> gtFree(M, 1);
  struct Commit {
    int gtIdx;
    int line;
    std::size_t begin, end;
  };
  std::vector<Commit> commits;

  if (!cfg.segmentation) {
    std::vector<char> hypFree(N, 1);
    bool progressed = true;
    while (progressed) {
      progressed = false;
      std::vector<Candidate> cands;
      for (int x = 0; x < M; ++x) {
        if (!gtFree[x]) continue;
        for (int y = 0; y < N; ++y) {
          if (!hypFree[y] || !admissible(y, x)) continue;
          std::uint64_t d = cells::ld(pc.hyp[y], pc.gt[x]);
          cands.push_back({cerKey(d, gtWeight[x]), d, x, y, 0, pc.hyp[y].size()});
        }
      }
      std::sort(cands.begin(), cands.end(), candidateBefore);
      for (const auto& c : cands) {
        if (!gtFree[c.gtIdx] || !hypFree[c.line]) continue;
        gtFree[c.gtIdx] = 0;
        hypFree[c.line] = 0;
        commits.push_back({c.gtIdx, c.line, c.segBegin, c.segEnd});
        progressed = true;
      }
    }

    EvalResult res;
    std::sort(commits.begin(), commits.end(),
              [](const Commit& a, const Commit& b) { return a.gtIdx < b.gtIdx; });
    for (const auto& cm : commits) {
      auto r = cells::ldWithCounts(pc.hyp[cm.line], pc.gt[cm.gtIdx]);
      res.counts.ins += r.counts.ins;
      res.counts.del += r.counts.del;
      res.counts.sub += r.counts.sub;
      res.counts.cor += r.counts.cor;
      res.distance += r.distance;
      res.alignment.matched.push_back({cm.line, cm.gtIdx});
    }
    for (int y = 0; y < N; ++y)
      if (hypFree[y]) {
        std::uint64_t w = cells::lineWeight(pc.hyp[y]);
        res.counts.del += w;
        res.distance += w;
        res.alignment.unmatchedHyp.push_back(y);
      }
    for (int x = 0; x < M; ++x)
      if (gtFree[x]) {
        res.counts.ins += gtWeight[x];
        res.distance += gtWeight[x];
        res.alignment.unmatchedGt.push_back(x);
      }
    for (int x = 0; x < M; ++x) res.counts.gtLen += gtWeight[x];
    for (int y = 0; y < N; ++y) res.counts.hypLen += cells::lineWeight(pc.hyp[y]);
    return res;
  }

  // Segmentation: hypothesis units are token-aligned segments of the free
  // remainder of each line. A committed segment consumes the separator slots
  // on its flanks (they become cuts), so remaining runs shrink accordingly.
  std::vector<std::vector<Interval>> committed(N);  // per line, kept sorted

  auto lineRuns = [&](int y) {
    std::vector<Interval> runs;
    const CellLine& line = pc.hyp[y];
    std::size_t prev = 0;
    auto addGap = [&](std::size_t a, std::size_t b, bool leftCut, bool rightCut) {
      if (leftCut && a < b && line[a].kind == Kind::Sep) ++a;
      if (rightCut && a < b && line[b - 1].kind == Kind::Sep) --b;
      if (a < b) runs.push_back({a, b});
    };
    for (std::size_t k = 0; k < committed[y].size(); ++k) {
      addGap(prev, committed[y][k].begin, k > 0, true);
      prev = committed[y][k].end;
    }
    addGap(prev, line.size(), !committed[y].empty(), false);
    return runs;
  };

  auto overlapsCommitted = [](const std::vector<Interval>& ivs, std::size_t s,
                              std::size_t e) {
    for (const auto& iv : ivs)
      if (s < iv.end && iv.begin < e) return true;
    return false;
  };

  bool progressed = true;
  while (progressed) {
    progressed = false;
    std::vector<Candidate> cands;
    for (int x = 0; x < M; ++x) {
      if (!gtFree[x]) continue;
      for (int y = 0; y < N; ++y) {
        if (!admissible(y, x)) continue;
        for (const auto& run : lineRuns(y)) {
          auto toks = tokenGroups(pc.hyp[y], run.begin, run.end);
          if (toks.empty()) continue;
          bool found = false;
          Candidate best{};
          for (std::size_t ti = 0; ti < toks.size(); ++ti) {
            for (std::size_t tj = ti; tj < toks.size(); ++tj) {
              CellLine seg(pc.hyp[y].begin() + toks[ti].begin,
                           pc.hyp[y].begin() + toks[tj].end);
              std::uint64_t d = cells::ld(seg, pc.gt[x]);
              Candidate c{cerKey(d, gtWeight[x]), d, x, y, toks[ti].begin, toks[tj].end};
              if (!found || candidateBefore(c, best)) {
                best = c;
                found = true;
              }
            }
          }
          if (found) cands.push_back(best);
        }
      }
    }
    std::sort(cands.begin(), cands.end(), candidateBefore);
    for (const auto& c : cands) {
      if (!gtFree[c.gtIdx]) continue;
      if (overlapsCommitted(committed[c.line], c.segBegin, c.segEnd)) continue;
      gtFree[c.gtIdx] = 0;
      auto& ivs = committed[c.line];
      ivs.insert(std::upper_bound(ivs.begin(), ivs.end(), c.segBegin,
                                  [](std::size_t v, const Interval& iv) {
                                    return v < iv.begin;
                                  }),
                 {c.segBegin, c.segEnd});
      commits.push_back({c.gtIdx, c.line, c.segBegin, c.segEnd});
      progressed = true;
    }
  }

  // Remaining run content is cut at every separator into single-token
  // deletion lines; cut separators cost nothing.
  struct Piece {
    int line;
    std::size_t begin, end;
    int gtIdx;  // -1: unmatched
  };
  std::vector<Piece> pieces;
  for (const auto& cm : commits) pieces.push_back({cm.line, cm.begin, cm.end, cm.gtIdx});
  for (int y = 0; y < N; ++y)
    for (const auto& run : lineRuns(y))
      for (const auto& tok : tokenGroups(pc.hyp[y], run.begin, run.end))
        pieces.push_back({y, tok.begin, tok.end, -1});
  std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) {
    return a.line != b.line ? a.line < b.line : a.begin < b.begin;
  });

  EvalResult res;
  Page segPage;
  segPage.id = hyp.id;
  for (std::size_t idx = 0; idx < pieces.size(); ++idx) {
    const auto& p = pieces[idx];
    CellLine cellsOf(pc.hyp[p.line].begin() + p.begin, pc.hyp[p.line].begin() + p.end);
    if (p.gtIdx >= 0) {
      auto r = cells::ldWithCounts(cellsOf, pc.gt[p.gtIdx]);
      res.counts.ins += r.counts.ins;
      res.counts.del += r.counts.del;
      res.counts.sub += r.counts.sub;
      res.counts.cor += r.counts.cor;
      res.distance += r.distance;
      res.alignment.matched.push_back({int(idx), p.gtIdx});
    } else {
      std::uint64_t w = cells::lineWeight(cellsOf);
      res.counts.del += w;
      res.distance += w;
      res.alignment.unmatchedHyp.push_back(int(idx));
    }
    res.counts.hypLen += cells::lineWeight(cellsOf);
    segPage.lines.push_back({cells::cellLineText(cellsOf, pc), std::nullopt, ""});
  }
  std::sort(res.alignment.matched.begin(), res.alignment.matched.end(),
            [](auto& a, auto& b) { return a.second < b.second; });
  for (int x = 0; x < M; ++x) {
    res.counts.gtLen += gtWeight[x];
    if (gtFree[x]) {
      res.counts.ins += gtWeight[x];
      res.distance += gtWeight[x];
      res.alignment.unmatchedGt.push_back(x);
    }
  }
  res.alignment.segmentedHyp = std::move(segPage);
  return res;
}

}  // namespace pageval
