#include "pageval/geometry.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pageval {

namespace {

double dist2(const Point& a, const Point& b) {
  double dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

double pointSegmentDist2(const Point& p, const Point& a, const Point& b) {
  double vx = b.x - a.x, vy = b.y - a.y;
  double len2 = vx * vx + vy * vy;
  if (len2 == 0) return dist2(p, a);
  double t = ((p.x - a.x) * vx + (p.y - a.y) * vy) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return dist2(p, Point{a.x + t * vx, a.y + t * vy});
}

double pointPolylineDist(const Point& p, const Baseline& line) {
  double best = std::numeric_limits<double>::infinity();
  if (line.size() == 1) return std::sqrt(dist2(p, line[0]));
  for (size_t k = 0; k + 1 < line.size(); ++k)
    best = std::min(best, pointSegmentDist2(p, line[k], line[k + 1]));
  return std::sqrt(best);
}

// Points at integer arc-length offsets 0..floor(L) along the polyline.
std::vector<Point> resample(const Baseline& line) {
  std::vector<Point> pts;
  if (line.size() == 1) return {line[0]};
  double next = 0;     // arc length of the next sample
  double walked = 0;   // arc length consumed by earlier segments
  for (size_t k = 0; k + 1 < line.size(); ++k) {
    const Point &a = line[k], &b = line[k + 1];
    double seg = std::sqrt(dist2(a, b));
    if (seg == 0) continue;
    while (next <= walked + seg) {
      double t = (next - walked) / seg;
      pts.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
      next += 1.0;
    }
    walked += seg;
  }
  if (pts.empty()) pts.push_back(line[0]);  // degenerate: all points coincide
  return pts;
}

std::string lineLabel(const Page& p, size_t idx) {
  const auto& l = p.lines[idx];
  if (!l.id.empty()) return l.id;
  return p.id + "[" + std::to_string(idx) + "]";
}

}  // namespace

Baseline normalizeBaseline(Baseline b) {
  Baseline out;
  for (const auto& p : b) {
    if (!out.empty() && out.back().x == p.x && out.back().y == p.y) continue;
    out.push_back(p);
  }
  return out;
}

double tolerance(const std::vector<Baseline>& gtBaselines, std::size_t x,
                 const MeasureConfig& cfg) {
  double dNear = std::numeric_limits<double>::infinity();
  for (size_t k = 0; k < gtBaselines.size(); ++k) {
    if (k == x) continue;
    for (const auto& p : gtBaselines[x])
      dNear = std::min(dNear, pointPolylineDist(p, gtBaselines[k]));
  }
  if (!std::isfinite(dNear)) return cfg.toleranceCap;
  return std::min(cfg.toleranceFraction * dNear, cfg.toleranceCap);
}

double coverage(const Baseline& hyp, const Baseline& gt, double tol) {
  auto pts = resample(gt);
  size_t within = 0;
  for (const auto& p : pts)
    if (pointPolylineDist(p, hyp) <= tol) ++within;
  return static_cast<double>(within) / static_cast<double>(pts.size());
}

bool isNeighbor(const Baseline& hyp, const Baseline& gt, double tol) {
  return coverage(hyp, gt, tol) > 0.0;
}

std::vector<std::vector<char>> neighborMatrix(const Page& hyp, const Page& gt,
                                              const MeasureConfig& cfg) {
  auto require = [&](const Page& p, size_t idx) -> const Baseline& {
    if (!p.lines[idx].baseline || p.lines[idx].baseline->empty())
      throw ConfigError("geometry requested but line " + lineLabel(p, idx) +
                        " has no baseline");
    return *p.lines[idx].baseline;
  };
  std::vector<Baseline> gtBase;
  gtBase.reserve(gt.lines.size());
  for (size_t x = 0; x < gt.lines.size(); ++x) gtBase.push_back(require(gt, x));
  std::vector<double> tol(gt.lines.size());
  for (size_t x = 0; x < gt.lines.size(); ++x) tol[x] = tolerance(gtBase, x, cfg);

  std::vector<std::vector<char>> nb(hyp.lines.size(),
                                    std::vector<char>(gt.lines.size(), 0));
  for (size_t y = 0; y < hyp.lines.size(); ++y) {
    const Baseline& hb = require(hyp, y);
    for (size_t x = 0; x < gt.lines.size(); ++x)
      nb[y][x] = isNeighbor(hb, gtBase[x], tol[x]) ? 1 : 0;
  }
  return nb;
}

}  // namespace pageval
