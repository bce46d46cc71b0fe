#include "doctest.h"

#include "idealconv/errors.hpp"
#include "idealconv/sequences.hpp"

using namespace idealconv;

namespace {

const NatSet omega{APSet::all()};
const NatSet evens{APSet::evens()};
const NatSet odds{APSet::odds()};
const NatSet squares = NatSet::squares();
const NatSet nonsquares = NatSet::squares().complement();

// n on evens, 0 on odds
SymSeq even_ramp() { return SymSeq({{evens, Term::unbounded(1)}, {odds, Term::constant(0)}}); }

// a off the squares, b on them
SymSeq square_spikes(Rational a, Rational b) {
  return SymSeq({{nonsquares, Term::constant(a)}, {squares, Term::constant(b)}});
}

SymSeq residues3(Rational a, Rational b, Rational c) {
  return SymSeq({{NatSet(APSet::residue(1, 3)), Term::constant(a)},
                 {NatSet(APSet::residue(2, 3)), Term::constant(b)},
                 {NatSet(APSet::residue(0, 3)), Term::constant(c)}});
}

std::vector<Rational> pts(std::initializer_list<int> v) { return {v.begin(), v.end()}; }

} // namespace

TEST_CASE("evaluation") {
  CHECK(eval(SymSeq::constant(5), 17) == 5);
  CHECK(eval(even_ramp(), 6) == 6);
  CHECK(eval(even_ramp(), 7) == 0);
  SymSeq h({{squares, Term::harmonic(1, 1)}, {nonsquares, Term::constant(0)}});
  CHECK(eval(h, 9) == Rational(4, 3));
  SymSeq g({{omega, Term::geometric(1, 2, Rational(1, 2))}});
  CHECK(eval(g, 3) == Rational(5, 4));
  CHECK_THROWS_AS(Term::geometric(0, 1, 1), InvalidArgument);
}

TEST_CASE("partition is checked") {
  CHECK_THROWS_AS(SymSeq({{evens, Term::constant(0)}}), InvalidArgument);
  CHECK_THROWS_AS(SymSeq({{evens, Term::constant(0)}, {omega, Term::constant(1)}}),
                  InvalidArgument);
}

TEST_CASE("ideal limits") {
  auto x = square_spikes(0, 1);
  auto r = ideal_lim(x, IdealDesc::z());
  REQUIRE(r.limit);
  CHECK(*r.limit == 0);
  CHECK_FALSE(r.certificate.empty());
  for (const auto& c : r.certificate)
    CHECK(member(IdealDesc::z(), AnySet(c.level)));
  CHECK_FALSE(ideal_lim(x, IdealDesc::fin()).limit);
  CHECK_FALSE(ideal_lim(even_ramp(), IdealDesc::z()).limit);
  SymSeq inv({{omega, Term::harmonic(0, 1)}});
  CHECK(*ideal_lim(inv, IdealDesc::fin()).limit == 0);
}

TEST_CASE("level sets carry the head corrections") {
  SymSeq inv({{omega, Term::harmonic(0, 1)}});
  // 1/n >= 1/4 exactly for n <= 4
  auto l = level_set(inv, 0, Rational(1, 4));
  for (nat n = 1; n <= 50; ++n)
    CHECK(l.contains(n) == (n <= 4));
  auto ramp = level_set(even_ramp(), 0, 5);
  for (nat n = 1; n <= 50; ++n)
    CHECK(ramp.contains(n) == (n % 2 == 0 && n >= 5));
}

TEST_CASE("I*-limits") {
  auto s = istar_lim(square_spikes(0, 1), IdealDesc::z());
  REQUIRE(s.limit);
  CHECK(*s.limit == 0);
  CHECK(s.witness == nonsquares);
  auto c = istar_lim(SymSeq::constant(3), IdealDesc::polya());
  CHECK(*c.limit == 3);
  CHECK(c.witness.complement().is_empty());
  auto h = istar_lim(SymSeq({{omega, Term::harmonic(0, 1)}}), IdealDesc::fin());
  CHECK(*h.limit == 0);
  CHECK(h.witness.complement().is_empty());
  CHECK_FALSE(istar_lim(even_ramp(), IdealDesc::z()).limit);
}

TEST_CASE("cluster and limit points") {
  auto g = cluster_points(even_ramp(), IdealDesc::z());
  CHECK(g.points == pts({0}));
  CHECK(limit_points(even_ramp(), IdealDesc::z()).points == pts({0}));
  REQUIRE(g.divergent);
  CHECK(*g.divergent_in_ideal == false);
  CHECK(cluster_points(residues3(0, 1, 2), IdealDesc::z()).points == pts({0, 1, 2}));
  CHECK(cluster_points(SymSeq::constant(4), IdealDesc::logz()).points == pts({4}));
  CHECK(cluster_points(square_spikes(0, 7), IdealDesc::fin()).points == pts({0, 7}));
}

TEST_CASE("equivalence") {
  auto x = even_ramp();
  CHECK(equivalent(x, x, IdealDesc::fin()));
  CHECK_FALSE(equivalent(x, SymSeq::constant(0), IdealDesc::z()));
  SymSeq mutated({{evens.minus(squares), Term::unbounded(1)},
                  {odds.minus(squares), Term::constant(0)},
                  {squares, Term::constant(9)}});
  CHECK(equivalent(x, mutated, IdealDesc::z()));
  CHECK_FALSE(equivalent(x, mutated, IdealDesc::fin()));
}

TEST_CASE("decomposition") {
  SymSeq x({{squares, Term::constant(5)}, {nonsquares, Term::harmonic(0, 1)}});
  auto d = decompose(x, IdealDesc::z(), 0);
  CHECK(*ideal_lim(d.y, IdealDesc::fin()).limit == 0);
  for (nat n = 1; n <= 200; ++n) {
    CHECK(eval(d.z, n) == (squares.contains(n) ? 5 : 0));
    CHECK(eval(x, n) == eval(d.y, n) + eval(d.z, n));
  }
  auto e = decompose(square_spikes(0, 1), IdealDesc::z(), 0);
  CHECK(e.y.pieces().size() == 1);
  CHECK(e.y.pieces()[0].term.offset() == 0);
  auto f = decompose(SymSeq({{omega, Term::harmonic(2, 3)}}), IdealDesc::z(), 2);
  for (nat n = 1; n <= 100; ++n)
    CHECK(eval(f.z, n) == 0);
  CHECK_THROWS_AS(decompose(even_ramp(), IdealDesc::z(), 0), NotConvergent);
  CHECK_THROWS_AS(decompose(square_spikes(0, 1), IdealDesc::polya(), 0), NotAPIdeal);
}

TEST_CASE("double decomposition") {
  PairSet rows({{APSet::prefix(3), APSet::all()}});
  DoubleSeq x({{rows, 1}, {rows.complement(), 0}});
  auto d = decompose_double(x, 0);
  CHECK(d.y.eval(2, 5) == 0);
  CHECK(d.z.eval(2, 5) == 1);
  CHECK(d.z.eval(4, 5) == 0);
  DoubleSeq c({{PairSet({{APSet::all(), APSet::all()}}), 3}});
  CHECK(decompose_double(c, 3).z.off(0).rects().empty());
  PairSet ee({{APSet::evens(), APSet::evens()}});
  CHECK_THROWS_AS(decompose_double(DoubleSeq({{ee, 1}, {ee.complement(), 0}}), 0), NotConvergent);
}

TEST_CASE("subsequences") {
  auto x = even_ramp();
  auto s = subseq_on(x, evens);
  for (nat k = 1; k <= 1000; ++k)
    CHECK(eval(s, k) == 2 * k);
  CHECK(s.pieces().size() == 1);
  auto same = subseq_on(x, omega);
  for (nat k = 1; k <= 100; ++k)
    CHECK(eval(same, k) == eval(x, k));
  auto c = subseq_on(SymSeq::constant(4), squares);
  for (nat k = 1; k <= 50; ++k)
    CHECK(eval(c, k) == 4);
  SymSeq h({{squares, Term::harmonic(1, 1)}, {nonsquares, Term::harmonic(0, 2)}});
  auto hs = subseq_on(h, odds);
  for (nat k = 1; k <= 300; ++k)
    CHECK(eval(hs, k) == eval(h, 2 * k - 1));
}

TEST_CASE("compress") {
  auto y = compress(square_spikes(0, 7), IdealDesc::z(), IdealDesc::fin());
  CHECK(cluster_points(y, IdealDesc::fin()).points == pts({0}));
  CHECK(equivalent(y, square_spikes(0, 7), IdealDesc::z()));
  auto x = residues3(0, 1, 2);
  CHECK(compress(x, IdealDesc::z(), IdealDesc::fin()).pieces().size() == x.pieces().size());
  NatSet m3(APSet::residue(0, 3));
  SymSeq thin({{NatSet(APSet::residue(1, 3)).unite(m3.minus(squares)), Term::constant(0)},
               {NatSet(APSet::residue(2, 3)), Term::constant(1)},
               {m3.intersect(squares), Term::constant(2)}});
  auto t = compress(thin, IdealDesc::z(), IdealDesc::fin());
  CHECK(cluster_points(t, IdealDesc::fin()).points == pts({0, 1}));
  for (nat n = 1; n <= 300; ++n) {
    auto v = eval(t, n);
    CHECK((v == 0 || v == 1 || v == 2));
  }
  CHECK_THROWS_AS(compress(x, IdealDesc::polya(), IdealDesc::fin()), NotAPIdeal);
}

TEST_CASE("filter base closures") {
  auto x = even_ramp();
  auto full = filter_base_closures(x, IdealDesc::z(), {});
  CHECK(full.points == pts({0}));
  CHECK(full.unbounded);
  auto sq = filter_base_closures(x, IdealDesc::z(), {squares});
  CHECK(sq.points == pts({0}));
  auto spikes = filter_base_closures(square_spikes(0, 1), IdealDesc::z(), {squares});
  CHECK(spikes.points == pts({0}));
  CHECK_THROWS_AS(filter_base_closures(x, IdealDesc::z(), {evens}), HypothesisViolated);
}

TEST_CASE("attractor check") {
  auto x = residues3(0, 1, 2);
  auto exact = smallest_closed_attractor_check(x, IdealDesc::z(), {{0, 0}, {1, 1}, {2, 2}});
  CHECK(exact.attracts);
  CHECK(exact.minimal);
  auto none = smallest_closed_attractor_check(x, IdealDesc::z(), {});
  CHECK_FALSE(none.attracts);
  auto wide = smallest_closed_attractor_check(x, IdealDesc::z(), {{0, 2}});
  CHECK(wide.attracts);
  CHECK(wide.contains_gamma);
  CHECK_FALSE(wide.minimal);
  CHECK_FALSE(smallest_closed_attractor_check(x, IdealDesc::z(), {{0, 1}}).attracts);
  CHECK_THROWS_AS(smallest_closed_attractor_check(even_ramp(), IdealDesc::z(), {{0, 0}}),
                  HypothesisViolated);
}
