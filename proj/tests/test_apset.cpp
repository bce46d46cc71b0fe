#include "doctest.h"

#include <set>

#include "idealconv/apset.hpp"
#include "idealconv/errors.hpp"
#include "idealconv/natset.hpp"
#include "support.hpp"

using namespace idealconv;

namespace {

nat brute_count(const auto& s, nat n) {
  nat c = 0;
  for (nat k = 1; k <= n; ++k)
    c += s.contains(k) ? 1 : 0;
  return c;
}

} // namespace

TEST_CASE("apset membership and counting") {
  CHECK_FALSE(APSet::evens().contains(7));
  CHECK(APSet::residue(1, 3).contains(7));
  CHECK(APSet::evens().count(10) == 5);
  APSet s(3, {0}, {1});
  CHECK(s.count(9) == 4);
  CHECK(s.count(9) == brute_count(s, 9));
  CHECK(APSet::evens().count(0) == 0);
}

TEST_CASE("apset algebra") {
  CHECK(APSet::evens().complement() == APSet::odds());
  CHECK(APSet::residue(0, 2).intersect(APSet::residue(0, 3)) == APSet::residue(0, 6));
  APSet u = APSet::residue(1, 4).unite(APSet::residue(3, 4));
  CHECK(u == APSet::residue(1, 2));
  CHECK(u.modulus() == 2);
  for (nat n = 1; n <= 100; ++n)
    CHECK(u.contains(n) == (n % 2 == 1));
}

TEST_CASE("apset enumeration") {
  CHECK(APSet::evens().enumerate(3) == 6);
  CHECK(APSet::odds().enumerate(1) == 1);
  CHECK(APSet(3, {0}, {}, {3}).enumerate(2) == 9);
  CHECK_THROWS_AS(APSet::finite({2, 5}).enumerate(3), FiniteSetExhausted);
}

TEST_CASE("apset reindex") {
  CHECK(reindex(APSet::evens(), APSet::evens()) == APSet::residue(0, 4));
  APSet b(5, {1, 3}, {2}, {6});
  CHECK(reindex(APSet::all(), b) == b);
  CHECK(reindex(b, APSet::all()) == b);
}

TEST_CASE("cantor pairing") {
  CHECK(unpairing(1, 1) == 1);
  CHECK(pairing(unpairing(3, 5)) == std::pair<nat, nat>{3, 5});
  std::set<nat> cells;
  for (nat i = 1; i <= 3; ++i)
    for (nat j = 1; i + j <= 4; ++j)
      cells.insert(unpairing(i, j));
  CHECK(cells.size() == 6);
  for (nat n = 1; n <= 2000; ++n) {
    auto [i, j] = pairing(n);
    CHECK(unpairing(i, j) == n);
  }
}

TEST_CASE("apset properties on random instances") {
  testing::Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    APSet s = testing::random_apset(rng);
    APSet t = testing::random_apset(rng);
    const nat n = 600;
    CHECK(s.unite(t).count(n) + s.intersect(t).count(n) == s.count(n) + t.count(n));
    CHECK(s.count(n) + s.complement().count(n) == n);
    CHECK(s.count(n) == brute_count(s, n));
    if (!s.is_finite()) {
      for (nat k = 1; k <= 40; ++k)
        CHECK(s.count(s.enumerate(k)) == k);
    }
    if (!s.is_finite() && !t.is_finite()) {
      APSet r = reindex(s, t);
      std::set<nat> image;
      for (nat k = 1; k <= 300; ++k)
        if (t.contains(k))
          image.insert(s.enumerate(k));
      nat bound = s.enumerate(300);
      for (nat m = 1; m <= bound; ++m)
        CHECK(r.contains(m) == (image.count(m) > 0));
      APSet pre = preimage(s, t);
      for (nat k = 1; k <= 300; ++k)
        CHECK(pre.contains(k) == t.contains(s.enumerate(k)));
    }
    // same set, different presentation
    nat scale = rng.uniform(1, 4);
    std::vector<nat> res;
    for (nat r = 0; r < s.modulus() * scale; ++r)
      if (s.periodic_contains(r))
        res.push_back(r);
    std::vector<nat> inc = s.includes(), exc = s.excludes();
    for (nat k = 1; k <= 3; ++k) {
      nat p = rng.uniform(1, 80);
      if (s.contains(p))
        inc.push_back(p);
      else
        exc.push_back(p);
    }
    CHECK(APSet(s.modulus() * scale, res, inc, exc) == s);
  }
}
