// Acceptance gate: one pass/fail line per criterion; exit status 1 if any fails.
#include <cstdio>
#include <functional>
#include <string>

#include "idealconv/density.hpp"
#include "idealconv/errors.hpp"
#include "idealconv/theorems.hpp"
#include "support.hpp"

using namespace idealconv;

namespace {

struct Result {
  bool pass;
  std::string detail;
};

const Rational tol(1, 100);

Result squares_example() {
  const NatSet sq = NatSet::squares();
  SymSeq x({{sq.complement(), Term::constant(0)}, {sq, Term::constant(1)}});
  auto z = ideal_lim(x, IdealDesc::z()).limit;
  auto fin = ideal_lim(x, IdealDesc::fin()).limit;
  bool ok = z && *z == 0 && !fin;
  return {ok, "Z-limit " + (z ? to_string(*z) : "none") + ", Fin-limit " + (fin ? to_string(*fin) : "none")};
}

Result even_ramp_example() {
  SymSeq x({{NatSet(APSet::evens()), Term::unbounded(1)}, {NatSet(APSet::odds()), Term::constant(0)}});
  auto g = cluster_points(x, IdealDesc::z());
  auto l = limit_points(x, IdealDesc::z());
  auto lim = ideal_lim(x, IdealDesc::z()).limit;
  const std::vector<Rational> zero{0};
  bool ok = g.points == zero && l.points == zero && !lim;
  return {ok, g.str("Γ") + ", " + l.str("Λ") + ", limit " + (lim ? to_string(*lim) : "none")};
}

Result density_engine() {
  const AnySet g(BlockSet(Schedule::geometric(1, 2), APSet::evens()));
  auto ev = upper_density(AnySet(APSet::evens()));
  auto lo = lower_density(g), hi = upper_density(g), p = polya_upper(g);
  bool exact = ev.exact && ev.value() == Rational(1, 2) && lo.exact && lo.value() == Rational(1, 3) &&
               hi.exact && hi.value() == Rational(2, 3) && p.exact && p.value() == 1;
  OracleOptions big;
  big.budget = 10000000;
  auto cps = make_checkpoints(big);
  auto o = prefix_oracle(g, cps); // [liminf, limsup] estimates
  auto o_p = polya_oracle(g, big);
  bool near = abs(o.hi - Rational(2, 3)) <= tol && abs(o.lo - Rational(1, 3)) <= tol &&
              abs(o_p.hi - 1) <= tol;
  return {exact && near, "exact (" + lo.str() + ", " + hi.str() + ", " + p.str() + "); prefix oracle " + o.str() +
                             ", polya " + o_p.str()};
}

Result theorem_suite() {
  std::string detail;
  bool ok = true;
  for (std::uint64_t seed : {42u, 7u, 2024u}) {
    int failed = 0;
    for (const auto& v : run_all(seed))
      if (!v.pass) {
        ++failed;
        detail += " " + v.id + "@" + std::to_string(seed) + ": " +
                  (*v.counterexample)["explanation"].get<std::string>() + ";";
      }
    ok = ok && failed == 0;
  }
  return {ok, std::to_string(catalog().size()) + " checks x seeds {42, 7, 2024}" + (ok ? "" : ":" + detail)};
}

Result negative_controls_fail() {
  std::string detail;
  bool ok = true;
  for (const auto& id : negative_controls()) {
    auto v = check({id, 500, 42, {}});
    ok = ok && !v.pass;
    detail += id + (v.pass ? " passed (bad)" : " fails at trial " + (*v.counterexample)["trial"].dump()) + "; ";
  }
  return {ok, detail};
}

Result decomposition_round_trip() {
  const IdealDesc z = IdealDesc::z();
  int done = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    SymSeq x = generate_instance(seed, Profile::Convergent, z).x;
    auto l = ideal_lim(x, z).limit;
    if (!l)
      return {false, "instance " + std::to_string(seed) + " is not Z-convergent"};
    auto d = decompose(x, z, *l);
    for (nat n = 1; n <= 1000; ++n)
      if (eval(x, n) != eval(d.y, n) + eval(d.z, n))
        return {false, "instance " + std::to_string(seed) + ": x != y + z at n = " + std::to_string(n)};
    auto yl = ideal_lim(d.y, IdealDesc::fin()).limit;
    if (!yl || *yl != *l)
      return {false, "instance " + std::to_string(seed) + ": y is not Fin-convergent to the limit"};
    std::vector<NatSet> supp;
    for (const auto& p : d.z.pieces())
      if (!p.term.is_zero())
        supp.push_back(p.support);
    if (!member(z, AnySet(NatSet::unite_all(supp))))
      return {false, "instance " + std::to_string(seed) + ": support of z is not in Z"};
    ++done;
  }
  return {true, std::to_string(done) + " instances to n = 1000"};
}

Result double_decomposition() {
  Rng rng(42);
  int done = 0, drawn = 0;
  while (done < 50) {
    if (++drawn > 10000)
      return {false, "could not draw 50 convergent instances"};
    auto [x, l] = random_double(rng);
    if (!member(IdealDesc::density_pr(), x.off(l)))
      continue;
    auto d = decompose_double(x, l);
    if (!member(IdealDesc::pringsheim(), d.y.off(l)))
      return {false, "y does not Pringsheim-converge on instance " + std::to_string(done)};
    if (!member(IdealDesc::density_pr(), d.z.off(0)))
      return {false, "support of z is not in Z_Pr on instance " + std::to_string(done)};
    for (nat i = 1; i <= 40; ++i)
      for (nat j = 1; j <= 40; ++j)
        if (x.eval(i, j) != d.y.eval(i, j) + d.z.eval(i, j))
          return {false, "x != y + z on instance " + std::to_string(done)};
    ++done;
  }
  return {true, std::to_string(done) + " instances"};
}

Result filter_characterization() {
  auto v = check({"T-fb", 500, 42, {}});
  return {v.pass, v.pass ? "500 trials" : (*v.counterexample)["explanation"].get<std::string>()};
}

Result oracle_agreement() {
  testing::Rng rng(42);
  OracleOptions opts;
  opts.budget = 1000000;
  auto cps = make_checkpoints(opts);
  for (int t = 0; t < 500; ++t) {
    APSet s = testing::random_apset(rng);
    auto exact = upper_density(AnySet(s));
    auto o = prefix_oracle(AnySet(s), cps);
    if (!exact.exact || !o.contains(exact.value()))
      return {false, s.describe() + ": exact " + exact.str() + ", oracle " + o.str()};
  }
  return {true, "500 sets at budget 10^6"};
}

} // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria{
      {"golden: squares example", squares_example},
      {"golden: even ramp", even_ramp_example},
      {"density engine", density_engine},
      {"theorem suite", theorem_suite},
      {"negative controls", negative_controls_fail},
      {"decomposition round trip", decomposition_round_trip},
      {"double decomposition", double_decomposition},
      {"filter characterization", filter_characterization},
      {"oracle/exact agreement", oracle_agreement},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Result r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    failures += !r.pass;
    std::printf("[%s] %zu. %s: %s\n", r.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), r.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
