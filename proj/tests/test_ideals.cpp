#include "doctest.h"

#include "idealconv/errors.hpp"
#include "idealconv/ideals.hpp"
#include "support.hpp"

using namespace idealconv;

namespace {

std::vector<IdealDesc> omega_ideals() {
  return {IdealDesc::fin(), IdealDesc::z(), IdealDesc::logz(), IdealDesc::density(make_rational(1, 2)),
          IdealDesc::polya(), IdealDesc::summable()};
}

AnySet random_nat(testing::Rng& rng) {
  switch (rng.uniform(0, 2)) {
  case 0:
    return testing::random_apset(rng);
  case 1:
    return NatSet(testing::random_apset(rng)).unite(NatSet::squares());
  default:
    return NatSet::power(static_cast<int>(rng.uniform(2, 3)), testing::random_apset(rng, 4));
  }
}

AnySet random_block(testing::Rng& rng) {
  return BlockSet(Schedule::geometric(1, 2), testing::random_apset(rng, 4));
}

// Two sets from one exact family, so boolean combinations stay exact.
std::pair<AnySet, AnySet> random_pair(testing::Rng& rng) {
  if (rng.coin(0.25))
    return {random_block(rng), random_block(rng)};
  return {random_nat(rng), random_nat(rng)};
}

} // namespace

TEST_CASE("ideal names") {
  for (std::string name : {"fin", "z", "logz", "alpha:1/2", "polya", "sum:1/n", "pr", "zpr"})
    CHECK(IdealDesc::parse(name).name() == name);
  CHECK(IdealDesc::parse("alpha:-1") == IdealDesc::logz());
  CHECK_THROWS_AS(IdealDesc::parse("bogus"), SchemaError);
  CHECK_THROWS_AS(IdealDesc::parse("alpha:-2"), InvalidAlpha);
}

TEST_CASE("capability flags") {
  CHECK(IdealDesc::fin().is_p());
  CHECK(IdealDesc::z().is_p());
  CHECK(IdealDesc::density_pr().is_p());
  CHECK_FALSE(IdealDesc::polya().is_p());
  CHECK_FALSE(IdealDesc::pringsheim().is_p());
  CHECK_FALSE(IdealDesc::summable().is_p());
  CHECK(IdealDesc::polya().is_g());
  CHECK(IdealDesc::logz().is_g());
  CHECK_FALSE(IdealDesc::summable().is_g());
}

TEST_CASE("membership examples") {
  CHECK_FALSE(member(IdealDesc::z(), APSet::evens()));
  CHECK(positive(IdealDesc::z(), APSet::evens()));
  CHECK(member(IdealDesc::z(), NatSet::squares()));
  CHECK(member(IdealDesc::summable(), NatSet::squares()));
  CHECK_FALSE(member(IdealDesc::fin(), NatSet::squares()));
  CHECK(member(IdealDesc::pringsheim(), PairSet::rect(APSet::all(), APSet::prefix(5))));
  CHECK_FALSE(member(IdealDesc::pringsheim(), PairSet::all()));
  BlockSet g(Schedule::geometric(1, 2), APSet::evens());
  CHECK_FALSE(member(IdealDesc::polya(), g));
  CHECK_FALSE(member(IdealDesc::summable(), g));
}

TEST_CASE("oracle-only membership is three-valued") {
  GeneralSet sparse([](nat n) { return n == 7; }, "{7}");
  CHECK_FALSE(try_member(IdealDesc::fin(), sparse).has_value());
  CHECK_THROWS_AS(member(IdealDesc::summable(), sparse), Undecidable);
  GeneralSet thirds([](nat n) { return n % 3 == 0; }, "3N");
  auto z = try_member(IdealDesc::z(), thirds);
  REQUIRE(z.has_value());
  CHECK_FALSE(*z);
}

TEST_CASE("ideal axioms on random sets") {
  testing::Rng rng(31);
  for (const auto& ideal : omega_ideals()) {
    CHECK_FALSE(member(ideal, APSet::all()));
    for (nat n = 1; n <= 100; ++n)
      CHECK(member(ideal, APSet::finite({n})));
    for (int trial = 0; trial < 250; ++trial) {
      auto [s, t] = random_pair(rng);
      AnySet sub = s.intersect(t);
      auto ms = try_member(ideal, s), mt = try_member(ideal, t), msub = try_member(ideal, sub);
      auto mu = try_member(ideal, s.unite(t));
      INFO(ideal.name(), " S = ", s.describe(), " T = ", t.describe());
      if (ms && *ms && msub)
        CHECK(*msub);
      if (ms && mt && *ms && *mt && mu)
        CHECK(*mu);
      if (auto dual = try_member(ideal, s.complement()); dual)
        CHECK(in_dual(ideal, s) == *dual);
    }
  }
}

TEST_CASE("polya-small sets are density-small") {
  testing::Rng rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    AnySet s = random_pair(rng).first;
    if (member(IdealDesc::polya(), s))
      CHECK(member(IdealDesc::z(), s));
    if (member(IdealDesc::summable(), s))
      CHECK(member(IdealDesc::z(), s));
  }
}

TEST_CASE("pringsheim ideal inside its density ideal") {
  testing::Rng rng(12);
  for (int trial = 0; trial < 400; ++trial) {
    std::vector<PairSet::Rect> rects;
    for (int i = rng.uniform(1, 3); i > 0; --i)
      rects.push_back({testing::random_apset(rng, 5), testing::random_apset(rng, 5)});
    PairSet a(rects);
    if (member(IdealDesc::pringsheim(), a))
      CHECK(member(IdealDesc::density_pr(), a));
    CHECK(in_dual(IdealDesc::density_pr(), a) == member(IdealDesc::density_pr(), a.complement()));
  }
}

TEST_CASE("p-ideal witnesses") {
  NatSet sq = NatSet::squares(), cu = NatSet::cubes();
  AnySet w = pideal_witness(IdealDesc::z(), SetFamily::tails(sq));
  CHECK(w.is_nat());
  CHECK(w.nat_set() == sq);
  AnySet u = pideal_witness(IdealDesc::z(), SetFamily::finite({sq, cu}));
  CHECK(member(IdealDesc::z(), u));
  for (nat n = 1; n <= 5000; ++n)
    CHECK(u.contains(n) == (sq.contains(n) || cu.contains(n)));
  AnySet f = pideal_witness(IdealDesc::fin(), SetFamily::finite({APSet::finite({1}), APSet::finite({2}),
                                                                 APSet::finite({3})}));
  CHECK(f.nat_set().ap() == APSet::finite({1, 2, 3}));
  CHECK_THROWS_AS(pideal_witness(IdealDesc::polya(), SetFamily::finite({sq})), NotAPIdeal);
  CHECK_THROWS_AS(pideal_witness(IdealDesc::z(), SetFamily::opaque()), UnsupportedFamily);
  testing::Rng rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<AnySet> fam;
    for (int i = rng.uniform(1, 4); i > 0; --i)
      fam.push_back(NatSet::power(static_cast<int>(rng.uniform(2, 3)), testing::random_apset(rng, 4))
                        .unite(APSet::finite({rng.uniform(1, 50)})));
    AnySet a = pideal_witness(IdealDesc::z(), SetFamily::finite(fam));
    CHECK(member(IdealDesc::z(), a));
    for (const auto& s : fam) {
      auto fin = s.nat_set().minus(a.nat_set()).try_finite();
      REQUIRE(fin.has_value());
      CHECK(*fin);
    }
  }
}

TEST_CASE("g-ideal reindexing") {
  auto r = gideal_reindex_check(IdealDesc::z(), APSet::odds(), APSet::evens());
  CHECK(r.ab == APSet::residue(3, 4));
  CHECK_FALSE(r.b_in_dual);
  CHECK_FALSE(r.ab_in_dual);
  CHECK(r.pass);
  APSet b(5, {1, 2, 4});
  auto id = gideal_reindex_check(IdealDesc::z(), APSet::all(), b);
  CHECK(id.ab == b);
  CHECK(id.pass);
  APSet cof = APSet::tail(7);
  auto f = gideal_reindex_check(IdealDesc::fin(), APSet::evens(), cof);
  CHECK(f.pass);
  CHECK_FALSE(f.a_in_dual);
  CHECK(f.b_in_dual);
  for (nat k = 1; k <= 1000; ++k)
    CHECK(f.ab.contains(2 * k) == (k >= 7));
  CHECK_THROWS_AS(gideal_reindex_check(IdealDesc::summable(), APSet::all(), b), NotAGIdeal);
}

TEST_CASE("pair ideals moved to ω") {
  IdealDesc pr = to_omega_ideal(IdealDesc::pringsheim());
  IdealDesc zpr = to_omega_ideal(IdealDesc::density_pr());
  CHECK(member_image(pr, PairSet::rect(APSet::all(), APSet::prefix(3))));
  CHECK_FALSE(member_image(pr, PairSet::all()));
  CHECK_FALSE(member(pr, APSet::all()));
  CHECK(member(zpr, APSet::finite({4, 9})));
  CHECK_FALSE(member_image(zpr, PairSet::rect(APSet::evens(), APSet::evens())));
  CHECK_THROWS_AS(member(pr, APSet::evens()), Undecidable);
}
