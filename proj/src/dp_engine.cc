#include "pageval/dp_engine.h"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>

#include "cells.h"
#include "pageval/geometry.h"
#include "pageval/utf8.h"

namespace pageval {

namespace {

using cells::Cell;
using cells::CellLine;
using cells::Kind;

constexpr std::uint32_t kNoRule = 0xFFFFFFFFu;
constexpr std::uint64_t kInf64 = std::numeric_limits<std::uint64_t>::max() / 4;

// One side of the DP: the page's cells laid out as a stream with break cells
// before, between and after the lines. DP positions are 1-based; position p
// holds cells[p-1]. Rule columns are the break positions, plus separator
// positions on the hypothesis side under segmentation.
struct Stream {
  std::vector<Cell> cells;
  std::vector<std::uint32_t> rule;       // sorted rule-column positions
  std::vector<std::uint32_t> ruleIdxOf;  // position -> index into rule, or kNoRule
  std::vector<int> parent;               // rule position -> owning line (-1: page edge)
  std::vector<char> interior;            // rule position -> slot between lines
  std::vector<std::uint64_t> prefixW;    // prefixW[p] = weight of positions 1..p
  std::size_t L = 0;

  const Cell& at(std::size_t pos) const { return cells[pos - 1]; }
  bool isRule(std::size_t pos) const { return ruleIdxOf[pos] != kNoRule; }
};

Stream buildStream(const std::vector<CellLine>& lines, bool extendedRule) {
  Stream s;
  const size_t numLines = lines.size();
  s.cells.push_back({cells::kBreakSym, Kind::Break, 0});
  for (const auto& line : lines) {
    s.cells.insert(s.cells.end(), line.begin(), line.end());
    s.cells.push_back({cells::kBreakSym, Kind::Break, 0});
  }
  s.L = s.cells.size();
  s.ruleIdxOf.assign(s.L + 1, kNoRule);
  s.parent.assign(s.L + 1, -1);
  s.interior.assign(s.L + 1, 0);
  s.prefixW.assign(s.L + 1, 0);

  int lineOf = -1;  // line containing the current position (breaks end lines)
  int breaksSeen = 0;
  for (size_t pos = 1; pos <= s.L; ++pos) {
    const Cell& c = s.at(pos);
    s.prefixW[pos] = s.prefixW[pos - 1] + c.weight;
    bool isRuleCol = false;
    if (c.kind == Kind::Break) {
      s.parent[pos] = breaksSeen - 1;  // line ending at this break
      s.interior[pos] = breaksSeen >= 1 && breaksSeen + 1 <= int(numLines);
      ++breaksSeen;
      lineOf = breaksSeen - 1;
      isRuleCol = true;
    } else {
      lineOf = breaksSeen - 1;
      if (extendedRule && c.kind == Kind::Sep) {
        s.parent[pos] = lineOf;
        s.interior[pos] = 1;
        isRuleCol = true;
      }
    }
    if (isRuleCol) {
      s.ruleIdxOf[pos] = static_cast<std::uint32_t>(s.rule.size());
      s.rule.push_back(static_cast<std::uint32_t>(pos));
    }
  }
  return s;
}

// Costs of the three block-internal moves; kInf64 marks an illegal move.
struct MoveCosts {
  const Stream& h;
  const Stream& g;
  bool seg;
  int sepWeight;

  std::uint64_t sub(std::size_t pi, std::size_t pj) const {
    const Cell &a = h.at(pi), &b = g.at(pj);
    if (b.kind == Kind::Break) return kInf64;
    if (a.kind == Kind::Break) {
      if (!seg || !h.interior[pi]) return kInf64;
      if (b.kind == Kind::Sep) return 0;
      return sepWeight == 1 ? 1 : kInf64;
    }
    if (a.sym == b.sym) return 0;
    if (a.weight == 1 && b.weight == 1) return 1;
    return kInf64;
  }
  std::uint64_t del(std::size_t pi) const {
    const Cell& a = h.at(pi);
    if (a.kind == Kind::Break)
      return (seg && h.interior[pi]) ? std::uint64_t(sepWeight) : kInf64;
    return a.weight;
  }
  std::uint64_t ins(std::size_t pj) const {
    const Cell& b = g.at(pj);
    if (b.kind == Kind::Break) return kInf64;
    return b.weight;
  }
};

struct Engine {
  const Stream& h;
  const Stream& g;
  MoveCosts mv;
  const std::vector<std::vector<char>>* neighbors;

  bool ruleNode(std::size_t i, std::size_t j) const {
    return i > 0 && j > 0 && h.isRule(i) && g.isRule(j);
  }
  // Gate on the free diagonal into rule node (i, j): the hypothesis line
  // owning slot i must be admissible for the ground-truth line ending at j.
  bool gate(std::size_t i, std::size_t j) const {
    if (!neighbors) return true;
    int ph = h.parent[i], pg = g.parent[j];
    if (ph < 0 || pg < 0) return true;
    return (*neighbors)[ph][pg] != 0;
  }
  std::uint64_t key(std::size_t i, std::size_t j) const { return i * (g.L + 1) + j; }
};

// Open-addressing map from node key to (distance, settled) used by the
// shortest-path search; nodes touched stay far below the full table size.
class NodeMap {
 public:
  static constexpr std::uint64_t kAbsent = std::numeric_limits<std::uint64_t>::max();

  explicit NodeMap(std::size_t capacityHint) {
    std::size_t n = 1024;
    while (n < capacityHint * 2) n <<= 1;
    keys_.assign(n, kEmptyKey);
    vals_.resize(n);
    mask_ = n - 1;
  }

  std::uint64_t get(std::uint64_t k) const {
    std::size_t p = probe(k);
    return keys_[p] == k ? vals_[p] : kAbsent;
  }
  void set(std::uint64_t k, std::uint64_t v) {
    if ((count_ + 1) * 3 > keys_.size() * 2) grow();
    std::size_t p = probe(k);
    if (keys_[p] != k) {
      keys_[p] = k;
      ++count_;
    }
    vals_[p] = v;
  }

 private:
  static constexpr std::uint64_t kEmptyKey = std::numeric_limits<std::uint64_t>::max();

  std::size_t probe(std::uint64_t k) const {
    std::uint64_t x = k + 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    std::size_t p = static_cast<std::size_t>(x ^ (x >> 31)) & mask_;
    while (keys_[p] != k && keys_[p] != kEmptyKey) p = (p + 1) & mask_;
    return p;
  }
  void grow() {
    std::vector<std::uint64_t> ok = std::move(keys_), ov = std::move(vals_);
    keys_.assign(ok.size() * 2, kEmptyKey);
    vals_.resize(ok.size() * 2);
    mask_ = keys_.size() - 1;
    count_ = 0;
    for (std::size_t p = 0; p < ok.size(); ++p)
      if (ok[p] != kEmptyKey) {
        std::size_t q = probe(ok[p]);
        keys_[q] = ok[p];
        vals_[q] = ov[p];
        ++count_;
      }
  }

  std::vector<std::uint64_t> keys_;
  std::vector<std::uint64_t> vals_;
  std::size_t mask_ = 0;
  std::size_t count_ = 0;
};

constexpr std::uint64_t kSettledBit = 1ull << 63;
constexpr std::uint64_t kDistMask = kSettledBit - 1;

// Dijkstra over the implicit graph with a bucket (Dial) queue; edge costs are
// small non-negative integers. Returns a distance oracle for settled nodes.
class ShortestPath {
 public:
  ShortestPath(const Engine& e) : e_(e), map_(1 << 12) {}

  std::uint64_t run() {
    std::uint64_t maxEdge = 1;
    for (std::size_t k = 1; k < e_.h.rule.size(); ++k)
      maxEdge = std::max<std::uint64_t>(
          maxEdge, e_.h.prefixW[e_.h.rule[k] - 1] - e_.h.prefixW[e_.h.rule[k - 1]]);
    for (std::size_t k = 1; k < e_.g.rule.size(); ++k)
      maxEdge = std::max<std::uint64_t>(
          maxEdge, e_.g.prefixW[e_.g.rule[k] - 1] - e_.g.prefixW[e_.g.rule[k - 1]]);
    const std::size_t ring = static_cast<std::size_t>(maxEdge) + 1;
    buckets_.assign(ring, {});

    const std::uint64_t startKey = e_.key(0, 0);
    const std::uint64_t endKey = e_.key(e_.h.L, e_.g.L);
    map_.set(startKey, 0);
    buckets_[0].push_back(startKey);
    const std::uint64_t bound = e_.h.prefixW[e_.h.L] + e_.g.prefixW[e_.g.L] + 1;

    std::uint64_t endDist = kInf64;
    for (std::uint64_t c = 0; c <= bound && c <= endDist; ++c) {
      // Zero-weight edges may append to the bucket being drained.
      auto& bucket = buckets_[c % ring];
      while (!bucket.empty()) {
        std::uint64_t k = bucket.back();
        bucket.pop_back();
        std::uint64_t v = map_.get(k);
        if ((v & kSettledBit) || (v & kDistMask) != c) continue;  // stale entry
        map_.set(k, v | kSettledBit);
        if (k == endKey) endDist = c;
        expand(k, c, ring);
      }
    }
    if (endDist == kInf64) throw EvalError("internal: no path through alignment graph");
    return endDist;
  }

  std::uint64_t dist(std::size_t i, std::size_t j) const {
    std::uint64_t v = map_.get(e_.key(i, j));
    return v == NodeMap::kAbsent ? kInf64 : (v & kDistMask);
  }

 private:
  void relax(std::size_t i, std::size_t j, std::uint64_t nd, std::size_t ring) {
    std::uint64_t k = e_.key(i, j);
    std::uint64_t v = map_.get(k);
    if (v != NodeMap::kAbsent && ((v & kSettledBit) || (v & kDistMask) <= nd)) return;
    map_.set(k, nd);
    buckets_[nd % ring].push_back(k);
  }

  void expand(std::uint64_t k, std::uint64_t d, std::size_t ring) {
    const std::size_t gl = e_.g.L + 1;
    std::size_t i = k / gl, j = k % gl;
    if (i < e_.h.L && j < e_.g.L) {
      if (e_.ruleNode(i + 1, j + 1)) {
        if (e_.gate(i + 1, j + 1)) relax(i + 1, j + 1, d, ring);
      } else {
        std::uint64_t w = e_.mv.sub(i + 1, j + 1);
        if (w < kInf64) relax(i + 1, j + 1, d + w, ring);
      }
    }
    if (i < e_.h.L && !e_.ruleNode(i + 1, j)) {
      std::uint64_t w = e_.mv.del(i + 1);
      if (w < kInf64) relax(i + 1, j, d + w, ring);
    }
    if (j < e_.g.L && !e_.ruleNode(i, j + 1)) {
      std::uint64_t w = e_.mv.ins(j + 1);
      if (w < kInf64) relax(i, j + 1, d + w, ring);
    }
    if (e_.ruleNode(i, j)) {
      std::uint32_t ri = e_.h.ruleIdxOf[i], rj = e_.g.ruleIdxOf[j];
      if (ri + 1 < e_.h.rule.size()) {
        std::size_t i2 = e_.h.rule[ri + 1];
        relax(i2, j, d + (e_.h.prefixW[i2 - 1] - e_.h.prefixW[i]), ring);
      }
      if (rj + 1 < e_.g.rule.size()) {
        std::size_t j2 = e_.g.rule[rj + 1];
        relax(i, j2, d + (e_.g.prefixW[j2 - 1] - e_.g.prefixW[j]), ring);
      }
    }
  }

  const Engine& e_;
  NodeMap map_;
  std::vector<std::vector<std::uint64_t>> buckets_;
};

// Full-table recurrence; same move set, used as a cross-check.
std::uint64_t fullTableDistance(const Engine& e, std::vector<std::uint64_t>* out = nullptr) {
  const std::size_t Lh = e.h.L, Lg = e.g.L;
  if ((Lh + 1) * (Lg + 1) > (1ull << 26))
    throw EvalError("full-table mode exceeds its size limit");
  std::vector<std::uint64_t> tab((Lh + 1) * (Lg + 1), kInf64);
  auto D = [&](std::size_t i, std::size_t j) -> std::uint64_t& {
    return tab[i * (Lg + 1) + j];
  };
  auto add = [](std::uint64_t a, std::uint64_t b) {
    return a >= kInf64 || b >= kInf64 ? kInf64 : a + b;
  };
  D(0, 0) = 0;
  for (std::size_t i = 1; i <= Lh; ++i) D(i, 0) = add(D(i - 1, 0), e.mv.del(i));
  for (std::size_t j = 1; j <= Lg; ++j) D(0, j) = add(D(0, j - 1), e.mv.ins(j));
  for (std::size_t i = 1; i <= Lh; ++i) {
    for (std::size_t j = 1; j <= Lg; ++j) {
      std::uint64_t best;
      if (e.ruleNode(i, j)) {
        best = e.gate(i, j) ? D(i - 1, j - 1) : kInf64;
        std::uint32_t ri = e.h.ruleIdxOf[i], rj = e.g.ruleIdxOf[j];
        if (ri >= 1) {
          std::size_t i2 = e.h.rule[ri - 1];
          best = std::min(best, add(D(i2, j), e.h.prefixW[i - 1] - e.h.prefixW[i2]));
        }
        if (rj >= 1) {
          std::size_t j2 = e.g.rule[rj - 1];
          best = std::min(best, add(D(i, j2), e.g.prefixW[j - 1] - e.g.prefixW[j2]));
        }
      } else {
        best = add(D(i - 1, j - 1), e.mv.sub(i, j));
        best = std::min(best, add(D(i - 1, j), e.mv.del(i)));
        best = std::min(best, add(D(i, j - 1), e.mv.ins(j)));
      }
      D(i, j) = best;
    }
  }
  std::uint64_t d = D(Lh, Lg);
  if (out) *out = std::move(tab);
  return d;
}

struct PathNode {
  std::size_t i, j;
};

// Without segmentation every block between consecutive rule columns is a
// whole line, so the stream-level search decomposes into a grid over
// (hyp line, gt line) with lazily computed pair distances. Same optimum and
// the same witness (rule-node tie-breaks mirror walkOptimalPath), but the
// frontier is quadratic in lines, not in characters.
struct LineSolve {
  std::uint64_t distance = 0;
  std::vector<PathNode> ruleNodes;
};

LineSolve solveByLines(const cells::PairCells& pc, const Stream& hs, const Stream& gs,
                       const std::vector<std::vector<char>>* neighbors) {
  const std::size_t N = pc.hyp.size(), M = pc.gt.size();
  const std::size_t W = M + 1;
  std::vector<std::uint64_t> hw(N), gw(M);
  for (std::size_t y = 0; y < N; ++y) hw[y] = cells::lineWeight(pc.hyp[y]);
  for (std::size_t x = 0; x < M; ++x) gw[x] = cells::lineWeight(pc.gt[x]);

  constexpr std::uint64_t kUncomputed = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> pairMemo(N * M, kUncomputed);
  auto pairCost = [&](std::size_t y, std::size_t x) {
    std::uint64_t& m = pairMemo[y * M + x];
    if (m == kUncomputed) m = cells::ld(pc.hyp[y], pc.gt[x]);
    return m;
  };
  auto admissible = [&](std::size_t y, std::size_t x) {
    return neighbors == nullptr || (*neighbors)[y][x] != 0;
  };

  std::vector<std::uint64_t> dist((N + 1) * W, kInf64);
  using QE = std::pair<std::uint64_t, std::size_t>;  // (distance, node)
  std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
  dist[0] = 0;
  pq.push({0, 0});
  const std::size_t end = N * W + M;
  std::uint64_t endDist = kInf64;
  while (!pq.empty()) {
    auto [d, k] = pq.top();
    pq.pop();
    if (d > dist[k]) continue;  // stale entry
    // The backward walk tests exact distances of predecessors, so keep
    // settling until everything at the optimum is final.
    if (d > endDist) break;
    if (k == end) endDist = d;
    const std::size_t y = k / W, x = k % W;
    auto relax = [&](std::size_t k2, std::uint64_t nd) {
      if (nd < dist[k2]) {
        dist[k2] = nd;
        pq.push({nd, k2});
      }
    };
    if (y < N) relax(k + W, d + hw[y]);
    if (x < M) relax(k + 1, d + gw[x]);
    if (y < N && x < M && admissible(y, x)) relax(k + W + 1, d + pairCost(y, x));
  }
  if (endDist >= kInf64) throw EvalError("internal: no path through alignment graph");

  // Predecessor priority: GT-skip, pair, HYP-skip — identical to the rule-node
  // order in walkOptimalPath. Unsettled tentative distances are upper bounds,
  // so an equality hit certifies optimality.
  std::vector<std::pair<std::size_t, std::size_t>> rev;
  std::size_t y = N, x = M;
  rev.push_back({y, x});
  while (y != 0 || x != 0) {
    const std::uint64_t dcur = dist[y * W + x];
    if (x > 0 && dist[y * W + (x - 1)] + gw[x - 1] == dcur) {
      --x;
    } else if (y > 0 && x > 0 && admissible(y - 1, x - 1) &&
               dist[(y - 1) * W + (x - 1)] + pairCost(y - 1, x - 1) == dcur) {
      --y;
      --x;
    } else if (y > 0 && dist[(y - 1) * W + x] + hw[y - 1] == dcur) {
      --y;
    } else {
      throw EvalError("internal: backtrace lost the optimal path");
    }
    rev.push_back({y, x});
  }

  LineSolve out;
  out.distance = endDist;
  for (auto it = rev.rbegin(); it != rev.rend(); ++it)
    out.ruleNodes.push_back({hs.rule[it->first], gs.rule[it->second]});
  return out;
}

// Deterministic backward walk over final distances. At rule nodes the
// predecessor priority is GT-skip, then the free diagonal, then HYP-skip;
// elsewhere diagonal, then delete, then insert.
std::vector<PathNode> walkOptimalPath(
    const Engine& e, const std::function<std::uint64_t(std::size_t, std::size_t)>& dist) {
  std::vector<PathNode> rev;
  std::size_t i = e.h.L, j = e.g.L;
  rev.push_back({i, j});
  while (i != 0 || j != 0) {
    const std::uint64_t dcur = dist(i, j);
    bool moved = false;
    if (e.ruleNode(i, j)) {
      std::uint32_t ri = e.h.ruleIdxOf[i], rj = e.g.ruleIdxOf[j];
      if (rj >= 1) {
        std::size_t j2 = e.g.rule[rj - 1];
        if (dist(i, j2) + (e.g.prefixW[j - 1] - e.g.prefixW[j2]) == dcur) {
          j = j2;
          moved = true;
        }
      }
      if (!moved && e.gate(i, j) && dist(i - 1, j - 1) == dcur) {
        --i, --j;
        moved = true;
      }
      if (!moved && ri >= 1) {
        std::size_t i2 = e.h.rule[ri - 1];
        if (dist(i2, j) + (e.h.prefixW[i - 1] - e.h.prefixW[i2]) == dcur) {
          i = i2;
          moved = true;
        }
      }
    } else {
      if (i > 0 && j > 0) {
        std::uint64_t w = e.mv.sub(i, j);
        if (w < kInf64 && dist(i - 1, j - 1) + w == dcur) {
          --i, --j;
          moved = true;
        }
      }
      if (!moved && i > 0) {
        std::uint64_t w = e.mv.del(i);
        if (w < kInf64 && dist(i - 1, j) + w == dcur) {
          --i;
          moved = true;
        }
      }
      if (!moved && j > 0) {
        std::uint64_t w = e.mv.ins(j);
        if (w < kInf64 && dist(i, j - 1) + w == dcur) {
          --j;
          moved = true;
        }
      }
    }
    if (!moved) throw EvalError("internal: backtrace lost the optimal path");
    rev.push_back({i, j});
  }
  return {rev.rbegin(), rev.rend()};
}

}  // namespace

FlatSequence flatten(const Page& page) {
  FlatSequence f;
  f.chars.push_back(kLineBreak);
  f.breaks.push_back(0);
  for (const auto& line : page.lines) {
    for (auto cp : utf8::decode(line.text)) f.chars.push_back(cp);
    f.chars.push_back(kLineBreak);
    f.breaks.push_back(f.chars.size() - 1);
  }
  std::size_t b = 0;
  for (std::size_t p = 0; p < f.chars.size(); ++p) {
    if (b < f.breaks.size() && f.breaks[b] == p) {
      f.extBreaks.push_back(p);
      ++b;
    } else if (f.chars[p] == U' ') {
      f.extBreaks.push_back(p);
    }
  }
  return f;
}

Page unflatten(const FlatSequence& seq) {
  Page page;
  for (std::size_t k = 0; k + 1 < seq.breaks.size(); ++k) {
    std::vector<std::uint32_t> cps(seq.chars.begin() + seq.breaks[k] + 1,
                                   seq.chars.begin() + seq.breaks[k + 1]);
    page.lines.push_back({utf8::encode(cps), std::nullopt, ""});
  }
  return page;
}

std::uint32_t substitutionCost(std::uint32_t hi, std::uint32_t gj, bool segmentation) {
  if (hi == gj) return 0;
  if (gj == kLineBreak) return kInfiniteCost;
  if (hi == kLineBreak) {
    if (!segmentation) return kInfiniteCost;
    return gj == U' ' ? 0 : 1;
  }
  return 1;
}

EvalResult solve(const Page& hyp, const Page& gt, const MeasureConfig& cfg,
                 const std::vector<std::vector<char>>* neighbors, const DpOptions& opts) {
  if (!cfg.readingOrder)
    throw ConfigError("exact engine requires the reading-order restriction");
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

  auto pc = cells::buildPairCells(hyp, gt, cfg);
  Stream hs = buildStream(pc.hyp, cfg.segmentation);
  Stream gs = buildStream(pc.gt, false);
  Engine e{hs, gs, MoveCosts{hs, gs, cfg.segmentation, pc.sepWeight}, neighbors};

  std::uint64_t distance;
  // The path reduced to rule nodes; consecutive pairs classify as matched
  // block, skipped hypothesis fragment, or skipped ground-truth line.
  std::vector<PathNode> ruleNodes;
  // The line grid holds dense per-pair state; beyond that the sparse
  // stream-level search still works, only slower.
  const bool lineGridFits = hyp.lines.size() <= 4096 && gt.lines.size() <= 4096;
  if (!opts.fullTable && !cfg.segmentation && lineGridFits) {
    LineSolve ls = solveByLines(pc, hs, gs, neighbors);
    distance = ls.distance;
    ruleNodes = std::move(ls.ruleNodes);
  } else {
    std::vector<PathNode> path;
    if (opts.fullTable) {
      std::vector<std::uint64_t> tab;
      distance = fullTableDistance(e, &tab);
      path = walkOptimalPath(
          e, [&](std::size_t i, std::size_t j) { return tab[i * (gs.L + 1) + j]; });
    } else {
      ShortestPath sp(e);
      distance = sp.run();
      path = walkOptimalPath(
          e, [&](std::size_t i, std::size_t j) { return sp.dist(i, j); });
    }
    for (const auto& n : path)
      if (e.ruleNode(n.i, n.j)) ruleNodes.push_back(n);
  }

  EvalResult res;
  res.distance = distance;
  const Cell sepCell = pc.wordLevel ? Cell{cells::kWordSepSym, Kind::Sep, 0}
                                    : Cell{U' ', Kind::Sep, 1};
  std::vector<CellLine> hypPieces;  // matched segments and skipped fragments
  int pieceIdx = 0;
  for (std::size_t k = 0; k + 1 < ruleNodes.size(); ++k) {
    const auto &P = ruleNodes[k], &Q = ruleNodes[k + 1];
    if (P.i < Q.i) {
      CellLine piece(hs.cells.begin() + P.i, hs.cells.begin() + (Q.i - 1));
      for (auto& c : piece)
        if (c.kind == Kind::Break) c = sepCell;
      if (P.j < Q.j)
        res.alignment.matched.push_back({pieceIdx, int(gs.ruleIdxOf[Q.j]) - 1});
      else
        res.alignment.unmatchedHyp.push_back(pieceIdx);
      hypPieces.push_back(std::move(piece));
      ++pieceIdx;
    } else if (P.j < Q.j) {
      res.alignment.unmatchedGt.push_back(int(gs.ruleIdxOf[Q.j]) - 1);
    }
  }

  std::uint64_t check = 0;
  for (const auto& [hy, gx] : res.alignment.matched) {
    auto r = cells::ldWithCounts(hypPieces[hy], pc.gt[gx]);
    res.counts.ins += r.counts.ins;
    res.counts.del += r.counts.del;
    res.counts.sub += r.counts.sub;
    res.counts.cor += r.counts.cor;
    check += r.distance;
  }
  for (int hy : res.alignment.unmatchedHyp) {
    std::uint64_t w = cells::lineWeight(hypPieces[hy]);
    res.counts.del += w;
    check += w;
  }
  for (int gx : res.alignment.unmatchedGt) {
    std::uint64_t w = cells::lineWeight(pc.gt[gx]);
    res.counts.ins += w;
    check += w;
  }
  if (check != distance)
    throw EvalError("internal: alignment replay disagrees with path cost");
  for (const auto& line : pc.gt) res.counts.gtLen += cells::lineWeight(line);
  for (const auto& piece : hypPieces) res.counts.hypLen += cells::lineWeight(piece);

  if (cfg.segmentation) {
    Page seg;
    seg.id = hyp.id;
    for (const auto& piece : hypPieces)
      seg.lines.push_back({cells::cellLineText(piece, pc), std::nullopt, ""});
    res.alignment.segmentedHyp = std::move(seg);
  }
  return res;
}

}  // namespace pageval
