#include "doctest.h"

#include "idealconv/errors.hpp"
#include "idealconv/natset.hpp"
#include "support.hpp"

using namespace idealconv;

namespace {

std::vector<nat> brute_elements(const NatSet& s, nat n) {
  std::vector<nat> out;
  for (nat k = 1; k <= n; ++k)
    if (s.contains(k))
      out.push_back(k);
  return out;
}

NatSet random_formula(testing::Rng& rng, int depth) {
  int pick = static_cast<int>(rng.uniform(0, depth > 0 ? 5 : 1));
  switch (pick) {
  case 0:
    return NatSet(testing::random_apset(rng, 8));
  case 1:
    return NatSet::power(static_cast<int>(rng.uniform(2, 3)), testing::random_apset(rng, 4));
  case 2:
    return random_formula(rng, depth - 1).complement();
  case 3:
    return random_formula(rng, depth - 1).unite(random_formula(rng, depth - 1));
  case 4:
    return random_formula(rng, depth - 1).intersect(random_formula(rng, depth - 1));
  default: {
    NatSet frame = NatSet(APSet::residue(rng.uniform(0, 2), 3)).unite(NatSet::squares());
    return NatSet::preimage(frame, random_formula(rng, depth - 1));
  }
  }
}

} // namespace

TEST_CASE("squares") {
  NatSet sq = NatSet::squares();
  CHECK(sq.contains(49));
  CHECK_FALSE(sq.contains(50));
  CHECK(sq.count(1000000) == 1000);
  CHECK(sq.enumerate(12) == 144);
  CHECK(sq.density() == 0);
  CHECK_FALSE(sq.is_finite());
  CHECK(sq.describe() == "squares");
}

TEST_CASE("finiteness of power formulas") {
  NatSet sq = NatSet::squares();
  CHECK(sq.intersect(APSet::residue(2, 4)).is_finite());
  CHECK(sq.intersect(APSet::residue(2, 3)).is_empty());
  CHECK_FALSE(sq.intersect(NatSet::cubes()).is_finite());
  CHECK_FALSE(sq.minus(APSet::evens()).is_finite());
  APSet bad(4, {2, 3}, {9, 16});
  auto elems = sq.intersect(bad).finite_elements();
  REQUIRE(elems.has_value());
  CHECK(*elems == std::vector<nat>{9, 16});
  CHECK_FALSE(sq.intersect(APSet::residue(1, 8)).is_finite());
  // odd squares are 1 mod 8
  CHECK(sq.intersect(APSet::residue(3, 8)).is_empty());
}

TEST_CASE("densities of formulas") {
  NatSet odd_nonsquares = NatSet(APSet::odds()).minus(NatSet::squares());
  CHECK(odd_nonsquares.density() == make_rational(1, 2));
  NatSet frame = NatSet::squares().complement();
  NatSet pre = NatSet::preimage(frame, APSet::residue(0, 3));
  CHECK(pre.density() == make_rational(1, 3));
  for (nat k = 1; k <= 300; ++k)
    CHECK(pre.contains(k) == (frame.enumerate(k) % 3 == 0));
}

TEST_CASE("preimage on APs collapses") {
  NatSet p = NatSet::preimage(APSet::odds(), APSet::residue(1, 4));
  REQUIRE(p.is_ap());
  for (nat k = 1; k <= 100; ++k)
    CHECK(p.contains(k) == ((2 * k - 1) % 4 == 1));
}

TEST_CASE("random formulas agree with brute force") {
  testing::Rng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    NatSet s = random_formula(rng, 3);
    const nat n = 700;
    auto elems = brute_elements(s, n);
    CHECK(s.count(n) == static_cast<nat>(elems.size()));
    for (std::size_t i = 0; i < elems.size() && i < 50; ++i)
      CHECK(s.enumerate(static_cast<nat>(i + 1)) == elems[i]);
    CHECK(s.count(n) + s.complement().count(n) == n);
    NatSet t = random_formula(rng, 2);
    CHECK(s.unite(t).count(n) + s.intersect(t).count(n) == s.count(n) + t.count(n));
    auto fin = s.try_finite();
    if (fin && *fin) {
      auto all = s.finite_elements();
      REQUIRE(all.has_value());
      nat top = all->empty() ? 2000 : all->back() + 100;
      CHECK(s.count(top) == static_cast<nat>(all->size()));
      for (nat m : *all)
        CHECK(s.contains(m));
      if (top <= 20000) {
        auto far = brute_elements(s, top);
        CHECK(*all == far);
      }
    }
    if (auto d = s.try_density()) {
      nat big = 20000;
      double ratio = static_cast<double>(s.count(big)) / big;
      CHECK(std::abs(ratio - to_double(*d)) < 0.02);
    }
  }
}
