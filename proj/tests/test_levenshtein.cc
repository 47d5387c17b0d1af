#include <doctest.h>

#include <random>

#include "oracles.h"
#include "pageval/levenshtein.h"

using namespace pageval;

TEST_SUITE("levenshtein") {

TEST_CASE("classic example") {
  auto r = levenshtein("kitten", "sitting");
  CHECK(r.counts.distance() == 3);
  CHECK(r.counts.sub == 2);
  CHECK(r.counts.ins == 1);
  CHECK(r.counts.del == 0);
  CHECK(r.counts.cor == 4);
  CHECK(r.counts.gtLen == 7);
  CHECK(r.counts.hypLen == 6);
}

TEST_CASE("identity and empties") {
  CHECK(levenshteinDistance("abc", "abc") == 0);
  CHECK(levenshteinDistance("", "abc") == 3);
  CHECK(levenshteinDistance("abc", "") == 3);
  CHECK(levenshteinDistance("", "") == 0);
}

TEST_CASE("distance is over code points, not bytes") {
  // ö is two bytes; one substitution, not two.
  CHECK(levenshteinDistance("Schonbrunn", "Schönbrunn") == 1);
}

TEST_CASE("count identities hold") {
  auto r = levenshtein("Sunday", "Saturday");
  CHECK(r.counts.cor + r.counts.sub + r.counts.del == r.counts.hypLen);
  CHECK(r.counts.cor + r.counts.sub + r.counts.ins == r.counts.gtLen);
  CHECK(r.counts.distance() == 3);
}

TEST_CASE("edit script indices are consistent") {
  auto r = levenshtein("abXd", "abcd");
  std::size_t hi = 0, gj = 0;
  std::uint64_t cost = 0;
  for (const auto& op : r.ops) {
    switch (op.kind) {
      case EditKind::Match:
        CHECK(op.hypIndex == hi);
        CHECK(op.gtIndex == gj);
        ++hi;
        ++gj;
        break;
      case EditKind::Substitute:
        ++hi;
        ++gj;
        ++cost;
        break;
      case EditKind::Delete:  // hyp char with no gt partner
        ++hi;
        ++cost;
        break;
      case EditKind::Insert:  // gt char missing from hyp
        ++gj;
        ++cost;
        break;
    }
  }
  CHECK(hi == 4);
  CHECK(gj == 4);
  CHECK(cost == r.counts.distance());
}

TEST_CASE("matches independent table on random strings") {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> len(0, 12);
  std::uniform_int_distribution<int> pick(0, 3);
  static const char alphabet[] = {'a', 'b', 'c', ' '};
  for (int it = 0; it < 500; ++it) {
    std::string a, b;
    for (int i = len(rng); i > 0; --i) a.push_back(alphabet[pick(rng)]);
    for (int i = len(rng); i > 0; --i) b.push_back(alphabet[pick(rng)]);
    CHECK(levenshteinDistance(a, b) == oracles::charLd(a, b));
  }
}

TEST_CASE("asymmetric counts swap roles") {
  auto ab = levenshtein("ab", "abcd");
  CHECK(ab.counts.ins == 2);
  CHECK(ab.counts.del == 0);
  auto ba = levenshtein("abcd", "ab");
  CHECK(ba.counts.ins == 0);
  CHECK(ba.counts.del == 2);
}
}
