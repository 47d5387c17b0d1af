#include "cells.h"

#include <unordered_map>

#include "pageval/tokenizer.h"
#include "pageval/utf8.h"

namespace pageval::cells {

CellLine charCells(const std::vector<std::uint32_t>& codePoints) {
  CellLine out;
  out.reserve(codePoints.size());
  for (auto cp : codePoints)
    out.push_back({cp, cp == U' ' ? Kind::Sep : Kind::Plain, 1});
  return out;
}

CellLine wordCells(const std::vector<std::uint32_t>& tokenIds) {
  CellLine out;
  out.reserve(tokenIds.size() * 2);
  for (size_t k = 0; k < tokenIds.size(); ++k) {
    if (k > 0) out.push_back({kWordSepSym, Kind::Sep, 0});
    out.push_back({tokenIds[k], Kind::Plain, 1});
  }
  return out;
}

std::uint64_t lineWeight(const CellLine& line) {
  std::uint64_t w = 0;
  for (const auto& c : line) w += c.weight;
  return w;
}

LdCounts ldWithCounts(const CellLine& a, const CellLine& b, std::vector<EditOp>* ops) {
  const size_t n = a.size(), m = b.size();
  constexpr std::uint64_t kInf = ~0ull >> 2;
  std::vector<std::uint64_t> table((n + 1) * (m + 1));
  auto D = [&](size_t i, size_t j) -> std::uint64_t& { return table[i * (m + 1) + j]; };

  D(0, 0) = 0;
  for (size_t i = 1; i <= n; ++i) D(i, 0) = D(i - 1, 0) + a[i - 1].weight;
  for (size_t j = 1; j <= m; ++j) D(0, j) = D(0, j - 1) + b[j - 1].weight;
  auto subCost = [&](const Cell& x, const Cell& y) -> std::uint64_t {
    if (x.sym == y.sym) return 0;
    if (x.weight == 1 && y.weight == 1) return 1;
    return kInf;
  };
  for (size_t i = 1; i <= n; ++i) {
    for (size_t j = 1; j <= m; ++j) {
      std::uint64_t best = D(i - 1, j - 1) + subCost(a[i - 1], b[j - 1]);
      best = std::min(best, D(i - 1, j) + a[i - 1].weight);
      best = std::min(best, D(i, j - 1) + b[j - 1].weight);
      D(i, j) = best;
    }
  }

  LdCounts r;
  r.distance = D(n, m);
  r.counts.gtLen = lineWeight(b);
  r.counts.hypLen = lineWeight(a);
  if (ops) ops->clear();

  // Backtrace, preferring match > substitution > delete > insert.
  std::vector<EditOp> rev;
  size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      std::uint64_t sc = subCost(a[i - 1], b[j - 1]);
      if (sc != kInf && D(i, j) == D(i - 1, j - 1) + sc) {
        if (sc == 0) {
          r.counts.cor += a[i - 1].weight;
          rev.push_back({OpKind::Match, int(i - 1), int(j - 1)});
        } else {
          r.counts.sub += 1;
          rev.push_back({OpKind::Substitute, int(i - 1), int(j - 1)});
        }
        --i, --j;
        continue;
      }
    }
    if (i > 0 && D(i, j) == D(i - 1, j) + a[i - 1].weight) {
      r.counts.del += a[i - 1].weight;
      rev.push_back({OpKind::Delete, int(i - 1), -1});
      --i;
      continue;
    }
    r.counts.ins += b[j - 1].weight;
    rev.push_back({OpKind::Insert, -1, int(j - 1)});
    --j;
  }
  if (ops) ops->assign(rev.rbegin(), rev.rend());
  return r;
}

std::uint64_t ld(const CellLine& a, const CellLine& b) {
  const size_t n = a.size(), m = b.size();
  constexpr std::uint64_t kInf = ~0ull >> 2;
  std::vector<std::uint64_t> prev(m + 1), cur(m + 1);
  for (size_t j = 1; j <= m; ++j) prev[j] = prev[j - 1] + b[j - 1].weight;
  for (size_t i = 1; i <= n; ++i) {
    cur[0] = prev[0] + a[i - 1].weight;
    for (size_t j = 1; j <= m; ++j) {
      std::uint64_t sc;
      if (a[i - 1].sym == b[j - 1].sym)
        sc = 0;
      else if (a[i - 1].weight == 1 && b[j - 1].weight == 1)
        sc = 1;
      else
        sc = kInf;
      cur[j] = std::min({prev[j - 1] + sc, prev[j] + a[i - 1].weight,
                         cur[j - 1] + b[j - 1].weight});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

PairCells buildPairCells(const Page& hyp, const Page& gt, const MeasureConfig& cfg) {
  PairCells pc;
  pc.wordLevel = cfg.level == Level::Word;
  pc.sepWeight = pc.wordLevel ? 0 : 1;
  if (!pc.wordLevel) {
    for (const auto& l : hyp.lines) pc.hyp.push_back(charCells(utf8::decode(l.text)));
    for (const auto& l : gt.lines) pc.gt.push_back(charCells(utf8::decode(l.text)));
    return pc;
  }
  std::unordered_map<std::string, std::uint32_t> ids;
  auto intern = [&](const std::string& tok) {
    auto [it, added] = ids.emplace(tok, static_cast<std::uint32_t>(pc.vocab.size()));
    if (added) pc.vocab.push_back(tok);
    return it->second;
  };
  auto build = [&](const Page& p, std::vector<CellLine>& out) {
    for (const auto& l : p.lines) {
      std::vector<std::uint32_t> toks;
      for (const auto& t : tokenize(l.text, cfg.tokenizer)) toks.push_back(intern(t));
      out.push_back(wordCells(toks));
    }
  };
  build(hyp, pc.hyp);
  build(gt, pc.gt);
  return pc;
}

std::string cellLineText(const CellLine& line, const PairCells& ctx) {
  std::string out;
  if (!ctx.wordLevel) {
    for (const auto& c : line) utf8::append(out, c.sym);
    return out;
  }
  bool first = true;
  for (const auto& c : line) {
    if (c.kind != Kind::Plain) continue;
    if (!first) out.push_back(' ');
    out += ctx.vocab.at(c.sym);
    first = false;
  }
  return out;
}

}  // namespace pageval::cells
