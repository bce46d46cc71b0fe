#include "doctest.h"

#include "idealconv/sets.hpp"
#include "support.hpp"

using namespace idealconv;

namespace {

BlockSet g_set() { return BlockSet(Schedule::geometric(1, 2), APSet::evens()); }

PairSet random_pairset(testing::Rng& rng) {
  std::vector<PairSet::Rect> rects;
  for (int i = rng.uniform(0, 3); i > 0; --i)
    rects.push_back({testing::random_apset(rng, 6), testing::random_apset(rng, 6)});
  std::vector<Cell> inc, exc;
  for (int i = rng.uniform(0, 2); i > 0; --i)
    inc.push_back({rng.uniform(1, 20), rng.uniform(1, 20)});
  for (int i = rng.uniform(0, 2); i > 0; --i)
    exc.push_back({rng.uniform(1, 20), rng.uniform(1, 20)});
  return PairSet(rects, inc, exc);
}

} // namespace

TEST_CASE("block set membership") {
  BlockSet g = g_set();
  CHECK(g.contains(5));
  CHECK(g.contains(1));
  CHECK_FALSE(g.contains(2));
  CHECK_FALSE(g.contains(15));
  CHECK(g.contains(16));
  for (nat n = 1; n <= 5000; ++n) {
    // brute force: block index = floor(log2 n)
    nat k = 0;
    while ((nat{2} << k) <= n)
      ++k;
    CHECK(g.contains(n) == (k % 2 == 0));
  }
}

TEST_CASE("block set counting and algebra") {
  testing::Rng rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    Schedule sch = rng.coin() ? Schedule::geometric(rng.uniform(1, 5), rng.uniform(2, 4))
                              : Schedule::polynomial(static_cast<int>(rng.uniform(1, 3)));
    BlockSet a(sch, testing::random_apset(rng, 5), rng.coin());
    BlockSet b(sch, testing::random_apset(rng, 5), rng.coin());
    nat c = 0;
    for (nat n = 1; n <= 3000; ++n) {
      c += a.contains(n) ? 1 : 0;
      if (n % 97 == 0)
        CHECK(a.count(n) == c);
      CHECK(a.complement().contains(n) != a.contains(n));
      CHECK(a.unite(b).contains(n) == (a.contains(n) || b.contains(n)));
      CHECK(a.intersect(b).contains(n) == (a.contains(n) && b.contains(n)));
    }
    if (!a.is_finite() && a.count(3000) >= 10)
      for (nat k = 1; k <= 10; ++k)
        CHECK(a.count(a.enumerate(k)) == k);
  }
}

TEST_CASE("block set exact densities") {
  BlockSet g = g_set();
  CHECK(g.upper_density() == make_rational(2, 3));
  CHECK(g.lower_density() == make_rational(1, 3));
  CHECK(g.polya_upper() == 1);
  CHECK(g.complement().upper_density() == 1 - g.lower_density());
  BlockSet poly(Schedule::polynomial(2), APSet::residue(1, 3));
  CHECK(poly.upper_density() == make_rational(1, 3));
  CHECK(poly.lower_density() == make_rational(1, 3));
}

TEST_CASE("block density closed form against the running ratio") {
  testing::Rng rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    APSet sel = testing::random_apset(rng, 4);
    BlockSet s(Schedule::geometric(1, rng.uniform(2, 3)), APSet(sel.modulus(), sel.residues()));
    double hi = 0, lo = 1;
    // the extremes sit at block ends; scan the ends of the last 2M blocks below 2^40
    nat blocks = 0;
    while (s.schedule().boundary(blocks + 1) > 0 && s.schedule().boundary(blocks + 1) < (nat{1} << 40))
      ++blocks;
    for (nat k = blocks - 2 * s.selector().modulus(); k < blocks; ++k) {
      nat end = s.schedule().boundary(k + 1) - 1;
      double ratio = static_cast<double>(s.count(end)) / static_cast<double>(end);
      hi = std::max(hi, ratio);
      lo = std::min(lo, ratio);
    }
    CHECK(std::abs(hi - to_double(s.upper_density())) < 1e-6);
    CHECK(std::abs(lo - to_double(s.lower_density())) < 1e-6);
  }
}

TEST_CASE("pair sets") {
  PairSet rows5 = PairSet::rect(APSet::prefix(5), APSet::all());
  CHECK(rows5.count(10, 4) == 20);
  PairSet ee = PairSet::rect(APSet::evens(), APSet::evens());
  CHECK(ee.limit_measure() == make_rational(1, 4));
  testing::Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    PairSet a = random_pairset(rng), b = random_pairset(rng);
    PairSet u = a.unite(b), i = a.intersect(b), c = a.complement();
    BigInt brute = 0;
    for (nat x = 1; x <= 30; ++x)
      for (nat y = 1; y <= 25; ++y) {
        brute += a.contains(x, y) ? 1 : 0;
        CHECK(u.contains(x, y) == (a.contains(x, y) || b.contains(x, y)));
        CHECK(i.contains(x, y) == (a.contains(x, y) && b.contains(x, y)));
        CHECK(c.contains(x, y) == !a.contains(x, y));
      }
    CHECK(a.count(30, 25) == brute);
    CHECK(a.count(30, 25) + c.count(30, 25) == 750);
    CHECK(a.limit_measure() + c.limit_measure() == 1);
  }
}

TEST_CASE("unpairing image") {
  GeneralSet g = unpairing_image(PairSet::rect(APSet::all(), APSet::prefix(3)));
  for (nat n = 1; n <= 200; ++n)
    CHECK(g.contains(n) == (pairing(n).second <= 3));
}
