#include "doctest.h"

#include "idealconv/density.hpp"
#include "idealconv/errors.hpp"
#include "support.hpp"

using namespace idealconv;

namespace {

BlockSet g_set() { return BlockSet(Schedule::geometric(1, 2), APSet::evens()); }

std::vector<nat> powers_of_two(int top) {
  std::vector<nat> out;
  for (int k = 0; k <= top; ++k)
    out.push_back(nat{1} << k);
  return out;
}

// independent running-ratio extremes over [from, to]
std::pair<double, double> scan_ratio(const AnySet& s, nat from, nat to) {
  double lo = 1, hi = 0;
  nat c = 0;
  for (nat n = 1; n <= to; ++n) {
    c += s.contains(n) ? 1 : 0;
    if (n >= from) {
      double r = static_cast<double>(c) / static_cast<double>(n);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
  }
  return {lo, hi};
}

} // namespace

TEST_CASE("exact density values") {
  CHECK(upper_density(APSet::evens()).str() == "1/2 (exact)");
  CHECK(upper_density(APSet::finite({3, 8, 100})).value() == 0);
  CHECK(weighted_upper_density(APSet::evens(), -1).value() == make_rational(1, 2));
  CHECK(weighted_upper_density(APSet::all(), make_rational(3, 2)).value() == 1);
  CHECK(weighted_upper_density(NatSet::squares(), 0).value() == 0);
  CHECK(polya_upper(APSet::residue(2, 5)).value() == make_rational(1, 5));
  CHECK(polya_upper(APSet::all()).value() == 1);
  CHECK(polya_upper(APSet::evens()).str() == "1/2 (exact)");
  CHECK_THROWS_AS(weighted_upper_density(APSet::evens(), make_rational(-3, 2)), InvalidAlpha);
  AnySet g = g_set();
  CHECK(upper_density(g).value() == make_rational(2, 3));
  CHECK(lower_density(g).value() == make_rational(1, 3));
  CHECK(polya_upper(g).value() == 1);
}

TEST_CASE("g set against a direct scan") {
  // extremes of the running ratio sit at 2^{2k} - 1 and 2^{2k+1} - 1
  auto [lo, hi] = scan_ratio(g_set(), nat{1} << 20, nat{1} << 23);
  CHECK(std::abs(lo - 1.0 / 3) < 1e-5);
  CHECK(std::abs(hi - 2.0 / 3) < 1e-5);
}

TEST_CASE("mu") {
  CHECK(mu(PairSet::rect(APSet::evens(), APSet::all()), 10, 10) == make_rational(1, 2));
  CHECK(mu(PairSet(), 7, 3) == 0);
  CHECK(mu(PairSet::rect(APSet::prefix(5), APSet::all()), 10, 4) == make_rational(1, 2));
}

TEST_CASE("prefix oracle") {
  auto evens = prefix_oracle(APSet::evens(), powers_of_two(20));
  CHECK(evens.contains(make_rational(1, 2)));
  CHECK(evens.hi - evens.lo < make_rational(1, 1000));
  CHECK_FALSE(evens.exact);
  auto all = prefix_oracle(APSet::all(), powers_of_two(12));
  CHECK(all.lo == 1);
  CHECK(all.hi == 1);
  auto sq = prefix_oracle(NatSet::squares(), make_checkpoints({}));
  CHECK(sq.lo >= 0);
  CHECK(sq.hi <= make_rational(2, 1000));
}

TEST_CASE("oracles on a predicate-only copy of g") {
  BlockSet g = g_set();
  GeneralSet copy([g](nat n) { return g.contains(n); }, "G");
  OracleOptions opts;
  opts.budget = 10000000;
  auto up = upper_density(copy, opts);
  CHECK_FALSE(up.exact);
  CHECK(std::abs(to_double(up.hi) - 2.0 / 3) < 1e-2);
  CHECK(std::abs(to_double(up.lo) - 1.0 / 3) < 1e-2);
  auto polya = polya_upper(copy, opts);
  CHECK(to_double(polya.hi) > 0.99);
}

TEST_CASE("pólya oracle on a residue class") {
  auto r = polya_oracle(APSet::residue(1, 4));
  CHECK(r.contains(make_rational(1, 4)));
}

TEST_CASE("weighted oracle") {
  auto r = weighted_oracle(APSet::evens(), -1);
  // partial harmonic sums converge like 1/log n
  CHECK(std::abs(to_double(r.hi) - 0.5) < 0.05);
  auto sq = weighted_oracle(NatSet::squares(), 0);
  CHECK(to_double(sq.hi) < 3e-3);
}

TEST_CASE("density functional laws") {
  testing::Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    APSet s = testing::random_apset(rng), t = testing::random_apset(rng);
    Rational lo = lower_density(s).value(), up = upper_density(s).value();
    Rational pol = polya_upper(s).value();
    CHECK(0 <= lo);
    CHECK(lo <= up);
    CHECK(up <= pol);
    CHECK(pol <= 1);
    CHECK(lo == 1 - upper_density(s.complement()).value());
    CHECK(upper_density(s.unite(t)).value() <= up + upper_density(t).value());
    APSet sub = s.intersect(t);
    CHECK(upper_density(sub).value() <= up);
    CHECK(polya_upper(sub).value() <= pol);
  }
  for (int trial = 0; trial < 40; ++trial) {
    Schedule sch = Schedule::geometric(rng.uniform(1, 4), rng.uniform(2, 3));
    BlockSet b(sch, testing::random_apset(rng, 5));
    CHECK(b.lower_density() <= b.upper_density());
    CHECK(b.upper_density() <= b.polya_upper());
    CHECK(b.lower_density() == 1 - b.complement().upper_density());
  }
}

TEST_CASE("exact and oracle agree on random sets") {
  testing::Rng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    APSet s = testing::random_apset(rng, 24);
    auto oracle = prefix_oracle(s, make_checkpoints({}));
    CHECK(oracle.contains(s.density()));
  }
}
