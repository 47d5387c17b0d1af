#include "oracles.h"

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <functional>
#include <limits>
#include <stdexcept>

#include "pageval/utf8.h"

namespace oracles {
namespace {

constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max() / 4;

std::vector<std::uint32_t> cps(const std::string& s) { return pageval::utf8::decode(s); }

std::uint64_t cpLen(const std::string& s) { return cps(s).size(); }

std::uint64_t ldCps(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  const std::size_t n = a.size(), m = b.size();
  std::vector<std::uint64_t> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= m; ++j) {
      const std::uint64_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

struct PairTable {
  std::vector<std::uint64_t> hypLen, gtLen;
  std::vector<std::vector<std::uint64_t>> ld;  // [hyp][gt]
};

PairTable pairTable(const std::vector<std::string>& hyp, const std::vector<std::string>& gt) {
  PairTable t;
  std::vector<std::vector<std::uint32_t>> h, g;
  for (const auto& s : hyp) h.push_back(cps(s));
  for (const auto& s : gt) g.push_back(cps(s));
  for (const auto& v : h) t.hypLen.push_back(v.size());
  for (const auto& v : g) t.gtLen.push_back(v.size());
  t.ld.assign(h.size(), std::vector<std::uint64_t>(g.size(), 0));
  for (std::size_t i = 0; i < h.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) t.ld[i][j] = ldCps(h[i], g[j]);
  return t;
}

bool allowed(const std::vector<std::vector<char>>* neighbors, std::size_t i, std::size_t j) {
  return neighbors == nullptr || (*neighbors)[i][j] != 0;
}

}  // namespace

std::uint64_t charLd(const std::string& a, const std::string& b) { return ldCps(cps(a), cps(b)); }

std::uint64_t bruteMonotone(const std::vector<std::string>& hyp,
                            const std::vector<std::string>& gt,
                            const std::vector<std::vector<char>>* neighbors) {
  if (hyp.size() > 5 || gt.size() > 5) throw std::runtime_error("bruteMonotone: too large");
  const PairTable t = pairTable(hyp, gt);
  const std::size_t n = hyp.size(), m = gt.size();
  // Plain recursion: every call tree branch is one monotone partial matching.
  std::function<std::uint64_t(std::size_t, std::size_t)> rec =
      [&](std::size_t i, std::size_t j) -> std::uint64_t {
    if (i == n) {
      std::uint64_t rest = 0;
      for (std::size_t k = j; k < m; ++k) rest += t.gtLen[k];
      return rest;
    }
    if (j == m) {
      std::uint64_t rest = 0;
      for (std::size_t k = i; k < n; ++k) rest += t.hypLen[k];
      return rest;
    }
    std::uint64_t best = rec(i + 1, j) + t.hypLen[i];        // hyp line unmatched
    best = std::min(best, rec(i, j + 1) + t.gtLen[j]);       // gt line unmatched
    if (allowed(neighbors, i, j))
      best = std::min(best, rec(i + 1, j + 1) + t.ld[i][j]); // pair them
    return best;
  };
  return rec(0, 0);
}

std::uint64_t monotoneAssignmentLd(const std::vector<std::string>& hyp,
                                   const std::vector<std::string>& gt,
                                   const std::vector<std::vector<char>>* neighbors) {
  const PairTable t = pairTable(hyp, gt);
  const std::size_t n = hyp.size(), m = gt.size();
  std::vector<std::vector<std::uint64_t>> f(n + 1, std::vector<std::uint64_t>(m + 1, 0));
  for (std::size_t j = 1; j <= m; ++j) f[0][j] = f[0][j - 1] + t.gtLen[j - 1];
  for (std::size_t i = 1; i <= n; ++i) {
    f[i][0] = f[i - 1][0] + t.hypLen[i - 1];
    for (std::size_t j = 1; j <= m; ++j) {
      std::uint64_t best = f[i - 1][j] + t.hypLen[i - 1];
      best = std::min(best, f[i][j - 1] + t.gtLen[j - 1]);
      if (allowed(neighbors, i - 1, j - 1))
        best = std::min(best, f[i - 1][j - 1] + t.ld[i - 1][j - 1]);
      f[i][j] = best;
    }
  }
  return f[n][m];
}

std::uint64_t bruteUnrestricted(const std::vector<std::string>& hyp,
                                const std::vector<std::string>& gt) {
  if (gt.size() > 5 || hyp.size() > 12) throw std::runtime_error("bruteUnrestricted: too large");
  const PairTable t = pairTable(hyp, gt);
  const std::size_t n = hyp.size(), m = gt.size();
  std::function<std::uint64_t(std::size_t, unsigned)> rec =
      [&](std::size_t i, unsigned used) -> std::uint64_t {
    if (i == n) {
      std::uint64_t rest = 0;
      for (std::size_t j = 0; j < m; ++j)
        if (!(used >> j & 1u)) rest += t.gtLen[j];
      return rest;
    }
    std::uint64_t best = rec(i + 1, used) + t.hypLen[i];
    for (std::size_t j = 0; j < m; ++j)
      if (!(used >> j & 1u)) best = std::min(best, rec(i + 1, used | (1u << j)) + t.ld[i][j]);
    return best;
  };
  return rec(0, 0u);
}

namespace {

// The hypothesis page as one sequence of code points and separator slots.
// A slot is any in-line space or between-line break; each slot can be
// reinterpreted as either.
std::vector<std::int64_t> slotStream(const std::vector<std::string>& lines) {
  std::vector<std::int64_t> stream;
  for (std::size_t k = 0; k < lines.size(); ++k) {
    if (k > 0) stream.push_back(-1);
    for (std::uint32_t c : cps(lines[k])) stream.push_back(c == U' ' ? -1 : std::int64_t(c));
  }
  return stream;
}

std::size_t slotCount(const std::vector<std::int64_t>& stream) {
  std::size_t n = 0;
  for (auto v : stream) n += (v < 0);
  return n;
}

std::vector<std::string> applySlots(const std::vector<std::int64_t>& stream, unsigned mask) {
  std::vector<std::string> lines;
  std::string cur;
  std::size_t slot = 0;
  for (auto v : stream) {
    if (v < 0) {
      if (mask >> slot++ & 1u) {  // break
        lines.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(' ');
      }
    } else {
      pageval::utf8::append(cur, std::uint32_t(v));
    }
  }
  lines.push_back(cur);
  return lines;
}

}  // namespace

std::uint64_t bruteSeg(const std::vector<std::string>& hyp, const std::vector<std::string>& gt) {
  const auto stream = slotStream(hyp);
  const std::size_t slots = slotCount(stream);
  if (slots > 10) throw std::runtime_error("bruteSeg: too many slots");
  std::uint64_t best = kInf;
  for (unsigned mask = 0; mask < (1u << slots); ++mask)
    best = std::min(best, monotoneAssignmentLd(applySlots(stream, mask), gt));
  return best;
}

std::uint64_t bruteSegUnrestricted(const std::vector<std::string>& hyp,
                                   const std::vector<std::string>& gt) {
  const auto stream = slotStream(hyp);
  const std::size_t slots = slotCount(stream);
  if (slots > 6 || gt.size() > 5) throw std::runtime_error("bruteSegUnrestricted: too large");
  std::uint64_t best = kInf;
  for (unsigned mask = 0; mask < (1u << slots); ++mask)
    best = std::min(best, bruteUnrestricted(applySlots(stream, mask), gt));
  return best;
}

pageval::Page makePage(const std::vector<std::string>& lines) {
  pageval::Page p;
  p.id = "p";
  for (std::size_t i = 0; i < lines.size(); ++i) {
    pageval::Line l;
    l.text = lines[i];
    l.id = "l" + std::to_string(i + 1);
    p.lines.push_back(std::move(l));
  }
  return p;
}

std::vector<std::string> randomLines(std::mt19937& rng, int maxLines, int maxLen) {
  static const char alphabet[] = {'a', 'b', 'c', ' '};
  std::uniform_int_distribution<int> nLines(0, maxLines);
  std::uniform_int_distribution<int> len(0, maxLen);
  std::uniform_int_distribution<int> pick(0, 3);
  std::vector<std::string> lines(nLines(rng));
  for (auto& line : lines) {
    int k = len(rng);
    for (int i = 0; i < k; ++i) line.push_back(alphabet[pick(rng)]);
    // Normalized input: no leading/trailing spaces.
    while (!line.empty() && line.front() == ' ') line.erase(line.begin());
    while (!line.empty() && line.back() == ' ') line.pop_back();
  }
  return lines;
}

RunResult runCommand(const std::string& cmd) {
  const std::string full = cmd + " 2>&1";
  FILE* pipe = popen(full.c_str(), "r");
  if (pipe == nullptr) throw std::runtime_error("popen failed: " + cmd);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int status = pclose(pipe);
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, out};
}

}  // namespace oracles
