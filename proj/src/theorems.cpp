#include "idealconv/theorems.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <set>
#include <thread>

#include "idealconv/errors.hpp"

namespace idealconv {

namespace {

using Failure = std::optional<std::string>;
using Points = std::vector<Rational>;

nat uniform(Rng& rng, nat lo, nat hi) { return std::uniform_int_distribution<nat>(lo, hi)(rng); }

std::string show(const Points& p) {
  std::string out = "{";
  for (std::size_t i = 0; i < p.size(); ++i)
    out += (i ? ", " : "") + to_string(p[i]);
  return out + "}";
}

std::string show(const std::optional<Rational>& q) { return q ? to_string(*q) : "none"; }

bool subset(const Points& a, const Points& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

Points gamma(const SymSeq& x, const IdealDesc& i) { return cluster_points(x, i).points; }
Points lambda(const SymSeq& x, const IdealDesc& i) { return limit_points(x, i).points; }

bool in_union(const Rational& q, const std::vector<Interval>& f) {
  return std::any_of(f.begin(), f.end(), [&](const Interval& iv) { return iv.lo <= q && q <= iv.hi; });
}

// Verified I*-witness: A ∈ I* and x restricted to A converges to l.
Failure check_witness(const SymSeq& x, const IdealDesc& ideal, const StarReport& s) {
  if (!in_dual(ideal, AnySet(s.witness)))
    return "witness " + s.witness.describe() + " is not in the dual filter";
  auto sub = ideal_lim(subseq_on(x, s.witness), IdealDesc::fin());
  if (sub.limit != s.limit)
    return "x restricted to the witness converges to " + show(sub.limit) + ", not " + show(s.limit);
  return std::nullopt;
}

// {n : x_n != y_n} up to finite sets is a union of pieces on J; y agrees with x elsewhere.
SymSeq mutate(const SymSeq& x, const NatSet& j, const Rational& v) {
  std::vector<Piece> pieces{{j, Term::constant(v)}};
  for (const auto& p : x.pieces())
    pieces.push_back({p.support.minus(j), p.term.anchored(p.support)});
  return SymSeq::trusted(std::move(pieces));
}

// ---- T1: basic convergence facts -------------------------------------------

Failure t1_unique(const Instance& in) {
  const auto& x = in.x;
  std::vector<Rational> winners;
  for (const auto& l : x.piece_limits()) {
    auto eps = critical_eps(x, l).front();
    if (member(in.ideal, AnySet(level_set(x, l, eps))))
      winners.push_back(l);
  }
  if (winners.size() > 1)
    return "several I-limits: " + show(winners);
  auto lim = ideal_lim(x, in.ideal).limit;
  if (lim != (winners.empty() ? std::nullopt : std::optional<Rational>(winners[0])))
    return "ideal_lim " + show(lim) + " disagrees with the level sets " + show(winners);
  auto star = istar_lim(x, in.ideal).limit;
  if (star && star != lim)
    return "I*-limit " + show(star) + " differs from I-limit " + show(lim);
  return std::nullopt;
}

Failure t1_star_implies_i(const Instance& in) {
  auto s = istar_lim(in.x, in.ideal);
  if (!s.limit)
    return std::nullopt;
  if (auto f = check_witness(in.x, in.ideal, s))
    return f;
  auto lim = ideal_lim(in.x, in.ideal).limit;
  if (lim != s.limit)
    return "I*-limit " + show(s.limit) + " but I-limit " + show(lim);
  return std::nullopt;
}

Failure t1_i_implies_star(const Instance& in) {
  if (!in.ideal.is_p())
    return std::nullopt;
  auto lim = ideal_lim(in.x, in.ideal).limit;
  if (!lim)
    return std::nullopt;
  auto s = istar_lim(in.x, in.ideal);
  if (s.limit != lim)
    return "I-limit " + show(lim) + " but I*-limit " + show(s.limit) + " (" + s.reason + ")";
  return check_witness(in.x, in.ideal, s);
}

Failure t1_g_ideal(const Instance& in) {
  const NatSet& a = in.sets.at(0);
  if (!in_dual(in.ideal, AnySet(a)))
    return "generated A = " + a.describe() + " is not in the dual filter";
  auto whole = ideal_lim(in.x, in.ideal).limit;
  auto sub = ideal_lim(subseq_on(in.x, a), in.ideal).limit;
  if (whole != sub)
    return "x has I-limit " + show(whole) + " but x restricted to A has " + show(sub);
  return std::nullopt;
}

// Limit under "S ∩ E is finite", an ideal that does not survive re-indexing.
std::optional<Rational> trace_limit(const SymSeq& x, const NatSet& e) {
  for (const auto& l : x.piece_limits()) {
    NatSet level = level_set(x, l, critical_eps(x, l).front());
    if (level.intersect(e).is_finite())
      return l;
  }
  return std::nullopt;
}

Failure nc_g(const Instance& in) {
  const NatSet& e = in.sets.at(0);
  const NatSet& a = in.sets.at(1);
  auto whole = trace_limit(in.x, e);
  auto sub = trace_limit(subseq_on(in.x, a), e);
  if (whole != sub)
    return "trace limit " + show(whole) + " on x but " + show(sub) + " along A";
  return std::nullopt;
}

Failure c1_statistical(const Instance& in) {
  const IdealDesc z = IdealDesc::z();
  auto lim = ideal_lim(in.x, z).limit;
  auto s = istar_lim(in.x, z);
  if (lim != s.limit)
    return "statistical limit " + show(lim) + " but Z*-limit " + show(s.limit);
  if (!s.limit)
    return std::nullopt;
  if (auto f = check_witness(in.x, z, s))
    return f;
  auto sub = ideal_lim(subseq_on(in.x, s.witness), z).limit;
  if (sub != lim)
    return "the subsequence on the witness has statistical limit " + show(sub);
  return std::nullopt;
}

Failure c2_decompose(const Instance& in) {
  auto lim = ideal_lim(in.x, in.ideal).limit;
  if (!lim)
    return "convergent profile produced a non-convergent x";
  auto d = decompose(in.x, in.ideal, *lim);
  for (nat n = 1; n <= 1000; ++n)
    if (eval(in.x, n) != eval(d.y, n) + eval(d.z, n))
      return "x != y + z at n = " + std::to_string(n);
  if (ideal_lim(d.y, IdealDesc::fin()).limit != lim)
    return "y does not converge to " + to_string(*lim);
  for (const auto& p : d.z.pieces())
    if (p.term.eventually_nonzero() && !member(in.ideal, AnySet(p.support)))
      return "z is nonzero on " + p.support.describe() + ", not in " + in.ideal.name();
  return std::nullopt;
}

Failure d_double(const Instance& in) {
  const DoubleSeq& x = *in.dx;
  const Rational& l = *in.value;
  const PairSet off = x.off(l);
  const bool conv = member(IdealDesc::density_pr(), off);
  // independent look at the measure of the bad set on a large square
  const Rational m = mu(off, 3000, 3000);
  if (conv != (m < Rational(1, 100)))
    return "exact verdict " + std::string(conv ? "convergent" : "divergent") + " but mu = " + to_string(m);
  if (!conv) {
    try {
      decompose_double(x, l);
    } catch (const NotConvergent&) {
      return std::nullopt;
    }
    return "decompose_double accepted a divergent sequence";
  }
  auto d = decompose_double(x, l);
  if (!member(IdealDesc::pringsheim(), d.y.off(l)))
    return "y is not Pringsheim-convergent to " + to_string(l);
  if (!member(IdealDesc::density_pr(), d.z.off(0)))
    return "support of z is not in Z_Pr";
  for (nat i = 1; i <= 40; ++i)
    for (nat j = 1; j <= 40; ++j)
      if (x.eval(i, j) != d.y.eval(i, j) + d.z.eval(i, j))
        return "x != y + z at (" + std::to_string(i) + ", " + std::to_string(j) + ")";
  return std::nullopt;
}

// ---- L3: cluster and limit points ------------------------------------------

Failure l3_monotone(const Instance& in) {
  const IdealDesc& big = in.ideal;
  const IdealDesc& small = *in.smaller;
  auto gb = gamma(in.x, big), gs = gamma(in.x, small);
  if (!subset(gb, gs))
    return "Γ(" + big.name() + ") = " + show(gb) + " not inside Γ(" + small.name() + ") = " + show(gs);
  auto lb = lambda(in.x, big), ls = lambda(in.x, small);
  if (!subset(lb, ls))
    return "Λ(" + big.name() + ") = " + show(lb) + " not inside Λ(" + small.name() + ") = " + show(ls);
  return std::nullopt;
}

Failure l3_fin(const Instance& in) {
  auto g = gamma(in.x, IdealDesc::fin()), l = lambda(in.x, IdealDesc::fin());
  if (g != l)
    return "Γ(fin) = " + show(g) + " but Λ(fin) = " + show(l);
  return std::nullopt;
}

Failure l3_lambda_in_gamma(const Instance& in) {
  auto g = gamma(in.x, in.ideal), l = lambda(in.x, in.ideal);
  if (!subset(l, g))
    return "Λ = " + show(l) + " not inside Γ = " + show(g);
  return std::nullopt;
}

// A finite subset of ℝ is closed; the check is that Γ is a finite set of piece-limits.
Failure l3_closed(const Instance& in) {
  auto g = gamma(in.x, in.ideal);
  if (!std::is_sorted(g.begin(), g.end()) || std::adjacent_find(g.begin(), g.end()) != g.end())
    return "Γ is not a proper finite set: " + show(g);
  if (!subset(g, in.x.piece_limits()))
    return "Γ = " + show(g) + " has a point that is no piece-limit";
  return std::nullopt;
}

Failure l3_equivalent(const Instance& in) {
  const SymSeq& y = *in.y;
  if (!equivalent(in.x, y, in.ideal))
    return "mutation on a set of the ideal is not I-equivalent";
  if (gamma(in.x, in.ideal) != gamma(y, in.ideal))
    return "Γ changed: " + show(gamma(in.x, in.ideal)) + " vs " + show(gamma(y, in.ideal));
  if (lambda(in.x, in.ideal) != lambda(y, in.ideal))
    return "Λ changed: " + show(lambda(in.x, in.ideal)) + " vs " + show(lambda(y, in.ideal));
  return std::nullopt;
}

// {n : x_n ∈ K} is I-positive iff some piece whose values eventually lie in K is.
// K is [a, b] with endpoints off the piece-limits, or (-inf, -B] ∪ [B, inf) when
// `unbounded_k` is set.
Failure l3_compact(const Instance& in, bool unbounded_k) {
  auto in_k = [&](const std::optional<Rational>& q) {
    if (unbounded_k)
      return !q || abs(*q) >= *in.value;
    return q && in.intervals[0].lo < *q && *q < in.intervals[0].hi;
  };
  bool positive_hit = false;
  for (const auto& p : in.x.pieces())
    if (in_k(p.term.limit()) && !member(in.ideal, AnySet(p.support)))
      positive_hit = true;
  if (!positive_hit)
    return std::nullopt;
  auto g = gamma(in.x, in.ideal);
  if (std::none_of(g.begin(), g.end(), [&](const Rational& q) { return in_k(q); }))
    return "{n : x_n ∈ K} is I-positive but Γ = " + show(g) + " misses K";
  return std::nullopt;
}

Failure l3_star(const Instance& in) {
  auto s = istar_lim(in.x, in.ideal);
  if (!s.limit)
    return std::nullopt;
  Points one{*s.limit};
  if (gamma(in.x, in.ideal) != one || lambda(in.x, in.ideal) != one)
    return "I*-limit " + to_string(*s.limit) + " but Γ = " + show(gamma(in.x, in.ideal)) +
           ", Λ = " + show(lambda(in.x, in.ideal));
  return std::nullopt;
}

// ---- convergence from cluster points, group structure ----------------------

Failure l_conv(const Instance& in) {
  auto g = gamma(in.x, in.ideal);
  if (g.size() != 1)
    return std::nullopt;
  auto lim = ideal_lim(in.x, in.ideal).limit;
  if (lim != g[0])
    return "compact-valued with Γ = " + show(g) + " but I-limit " + show(lim);
  if (in.ideal.is_p()) {
    auto s = istar_lim(in.x, in.ideal);
    if (s.limit != g[0])
      return "P-ideal, Γ = " + show(g) + " but I*-limit " + show(s.limit);
    return check_witness(in.x, in.ideal, s);
  }
  return std::nullopt;
}

Failure c_k(const Instance& in) {
  auto cl = cluster_points(in.x, in.ideal);
  if (cl.divergent && cl.divergent_in_ideal != true)
    return std::nullopt;
  auto lim = ideal_lim(in.x, in.ideal).limit;
  auto single = cl.points.size() == 1 ? std::optional<Rational>(cl.points[0]) : std::nullopt;
  if (lim != single)
    return "bounded off I, Γ = " + show(cl.points) + " but I-limit " + show(lim);
  return std::nullopt;
}

Failure grp_cluster(const Instance& in) {
  const SymSeq& y = *in.y;
  if (ideal_lim(subtract(in.x, y), in.ideal).limit != Rational(0))
    return std::nullopt;
  auto gx = gamma(in.x, in.ideal), gy = gamma(y, in.ideal);
  if (gx != gy)
    return "x - y -> 0 but Γ_x = " + show(gx) + ", Γ_y = " + show(gy);
  return std::nullopt;
}

Failure grp_limit(const Instance& in) {
  const SymSeq& y = *in.y;
  if (istar_lim(subtract(in.x, y), in.ideal).limit != Rational(0))
    return std::nullopt;
  auto lx = lambda(in.x, in.ideal), ly = lambda(y, in.ideal);
  if (lx != ly)
    return "x - y ->* 0 but Λ_x = " + show(lx) + ", Λ_y = " + show(ly);
  return std::nullopt;
}

Failure l_cl(const Instance& in) {
  const IdealDesc& j = *in.smaller;
  SymSeq y = compress(in.x, in.ideal, j);
  auto gx = gamma(in.x, in.ideal), gy = gamma(y, j);
  if (gx != gy)
    return "Γ_x(" + in.ideal.name() + ") = " + show(gx) + " but Γ_y(" + j.name() + ") = " + show(gy);
  if (!equivalent(in.x, y, in.ideal))
    return "compressed sequence is not I-equivalent to x";
  std::set<Rational> seen;
  for (nat m = 1; m <= 1200; ++m)
    seen.insert(eval(in.x, m));
  for (nat n = 1; n <= 200; ++n)
    if (!seen.count(eval(y, n)))
      return "y_" + std::to_string(n) + " = " + to_string(eval(y, n)) + " is not a value of x";
  return std::nullopt;
}

// ---- topology and filters ---------------------------------------------------

Failure l_easy(const Instance& in) {
  const Rational& f = *in.value;
  auto g = gamma(SymSeq::constant(f), in.ideal);
  if (g != Points{f})
    return "constant " + to_string(f) + " has Γ = " + show(g);
  auto gi = gamma(in.x, in.ideal), gf = gamma(in.x, IdealDesc::fin());
  if (!subset(gi, gf))
    return "Γ(I) = " + show(gi) + " not inside Γ(fin) = " + show(gf);
  for (const auto& q : gf)
    if (!in_union(q, in.intervals))
      return "F-valued x has cluster point " + to_string(q) + " outside F";
  return std::nullopt;
}

Failure t_top(const Instance& in) {
  for (const auto& l : gamma(in.x, in.ideal)) {
    if (!in_union(l, in.intervals))
      return "Γ point " + to_string(l) + " outside the closed set F";
    // an F-valued subsequence with I-positive index set converging to l
    NatSet u(APSet::empty());
    for (const auto& p : in.x.pieces())
      if (p.term.limit() == l)
        u = u.unite(p.support);
    if (!positive(in.ideal, AnySet(u)))
      return "no I-positive piece behind the cluster point " + to_string(l);
    if (ideal_lim(subseq_on(in.x, u), IdealDesc::fin()).limit != l)
      return "subsequence on the pieces with limit " + to_string(l) + " does not converge to it";
  }
  return std::nullopt;
}

// For a piece-limit l outside Γ: the pieces converging to l form a set of I,
// and off it x stays away from l.
Failure separate(const SymSeq& x, const IdealDesc& ideal, const Points& g) {
  for (const auto& l : x.piece_limits()) {
    if (std::binary_search(g.begin(), g.end(), l))
      continue;
    NatSet near = level_set(x, l, critical_eps(x, l).front()).complement();
    if (!member(ideal, AnySet(near)))
      return "no separating witness for " + to_string(l) + ": " + near.describe() + " is not in the ideal";
    auto cl = filter_base_closures(x, ideal, {near});
    if (std::binary_search(cl.points.begin(), cl.points.end(), l))
      return to_string(l) + " survives its separating witness " + near.describe();
  }
  return std::nullopt;
}

Failure l_fb(const Instance& in) {
  auto g = gamma(in.x, in.ideal);
  if (auto f = separate(in.x, in.ideal, g))
    return f;
  auto cl = filter_base_closures(in.x, in.ideal, in.sets);
  if (!subset(g, cl.points))
    return "Γ = " + show(g) + " is not inside a witness closure " + show(cl.points);
  return std::nullopt;
}

Failure t_fb(const Instance& in) {
  auto g = gamma(in.x, in.ideal);
  for (const auto& w : in.sets) {
    auto cl = filter_base_closures(in.x, in.ideal, {w});
    if (!subset(g, cl.points))
      return "Γ = " + show(g) + " not inside the closure off " + w.describe() + ": " + show(cl.points);
  }
  std::vector<NatSet> all = in.sets;
  for (const auto& l : in.x.piece_limits())
    if (!std::binary_search(g.begin(), g.end(), l))
      all.push_back(level_set(in.x, l, critical_eps(in.x, l).front()).complement());
  if (auto f = separate(in.x, in.ideal, g))
    return f;
  auto cl = filter_base_closures(in.x, in.ideal, all);
  if (cl.points != g)
    return "intersection of closures " + show(cl.points) + " differs from Γ = " + show(g);
  return std::nullopt;
}

Failure t_attr(const Instance& in) {
  auto cl = cluster_points(in.x, in.ideal);
  if (cl.divergent && cl.divergent_in_ideal != true)
    return std::nullopt;
  std::vector<Interval> points;
  for (const auto& q : cl.points)
    points.push_back({q, q});
  if (!points.empty()) {
    auto r = smallest_closed_attractor_check(in.x, in.ideal, points);
    if (!r.attracts || !r.minimal)
      return "Γ = " + show(cl.points) + " is not a minimal attracting set";
  }
  auto r = smallest_closed_attractor_check(in.x, in.ideal, in.intervals);
  if (r.attracts != r.contains_gamma)
    return std::string("random C ") + (r.attracts ? "attracts without" : "contains Γ without attracting") +
           (r.attracts ? " containing Γ = " + show(cl.points) : "");
  return std::nullopt;
}

// ---- instance generators ----------------------------------------------------

using Gen = std::function<Instance(Rng&, const IdealDesc&, const std::optional<IdealDesc>&)>;

Gen profile(Profile p) {
  return [p](Rng& rng, const IdealDesc& i, const std::optional<IdealDesc>& j) {
    Instance in = generate_instance(rng(), p, i);
    in.smaller = j;
    return in;
  };
}

// Half generic, half convergent.
Instance mixed(Rng& rng, const IdealDesc& i, const std::optional<IdealDesc>&) {
  return generate_instance(rng(), uniform(rng, 0, 1) ? Profile::Convergent : Profile::Generic, i);
}

Instance gen_mutated(Rng& rng, const IdealDesc& i, const std::optional<IdealDesc>&) {
  Instance in = generate_instance(rng(), Profile::DualPair, i);
  in.y = mutate(in.x, in.sets[1], Rational(uniform(rng, -20, 20), uniform(rng, 1, 7)));
  return in;
}

// Endpoints p/11 in lowest terms never meet a generated piece-limit.
Instance gen_compact(Rng& rng, const IdealDesc& i, const std::optional<IdealDesc>&) {
  Instance in = generate_instance(rng(), Profile::Generic, i);
  auto end = [&] {
    nat p = uniform(rng, -44, 44);
    return Rational(p % 11 == 0 ? p + 1 : p, 11);
  };
  Rational a = end(), b = end();
  if (b < a)
    std::swap(a, b);
  in.intervals = {{a, b}};
  return in;
}

Instance gen_far(Rng& rng, const IdealDesc& i, const std::optional<IdealDesc>&) {
  Instance in = generate_instance(rng(), Profile::Generic, i);
  Rational b = 1;
  for (const auto& q : in.x.piece_limits())
    b = std::max(b, Rational(abs(q) + 1));
  in.value = b;
  return in;
}

Instance gen_valued(Rng& rng, const IdealDesc& i, const std::optional<IdealDesc>&) {
  Instance in;
  in.ideal = i;
  in.intervals = random_intervals(rng);
  in.x = random_valued_in(rng, in.intervals);
  in.value = random_point(rng, in.intervals);
  return in;
}

Instance gen_witnesses(Rng& rng, const IdealDesc& i, const std::optional<IdealDesc>&) {
  Instance in = generate_instance(rng(), Profile::Generic, i);
  for (int k = 0; k < 3; ++k)
    in.sets.push_back(random_small(rng, i));
  return in;
}

// Unbounded pieces are kept only on sets of the ideal.
Instance gen_attr(Rng& rng, const IdealDesc& i, const std::optional<IdealDesc>&) {
  Instance in = generate_instance(rng(), Profile::Generic, i);
  std::vector<Piece> pieces = in.x.pieces();
  for (auto& p : pieces)
    if (p.term.is_unbounded() && try_member(i, AnySet(p.support)) != true)
      p.term = Term::constant(Rational(uniform(rng, -3, 3)));
  in.x = SymSeq::trusted(std::move(pieces));
  in.intervals = random_intervals(rng);
  return in;
}

Instance gen_double(Rng& rng, const IdealDesc& i, const std::optional<IdealDesc>&) {
  Instance in;
  in.ideal = i;
  auto [x, l] = random_double(rng);
  in.dx = std::move(x);
  in.value = l;
  return in;
}

// E = evens and A ⊇ E; a predicate that only looks at E notices the re-indexing.
// Supports are kept periodic so that the trace finiteness stays decidable.
Instance gen_non_g(Rng& rng, const IdealDesc& i, const std::optional<IdealDesc>&) {
  Instance in;
  do
    in = generate_instance(rng(), Profile::Generic, i);
  while (!std::all_of(in.x.pieces().begin(), in.x.pieces().end(), [](const Piece& p) { return p.support.is_ap(); }));
  std::vector<nat> res{0, 2};
  res.push_back(uniform(rng, 0, 1) ? 1 : 3);
  in.sets = {NatSet(APSet::evens()), NatSet(APSet(4, res))};
  return in;
}

// ---- the catalog -------------------------------------------------------------

using Family = std::vector<std::pair<IdealDesc, std::optional<IdealDesc>>>;

struct CheckDef {
  std::string id;
  int trials;
  Family family;
  Gen gen;
  std::function<Failure(const Instance&)> prop;
};

Family singles(const std::vector<IdealDesc>& ideals) {
  Family f;
  for (const auto& i : ideals)
    f.push_back({i, std::nullopt});
  return f;
}

const std::vector<CheckDef>& defs() {
  static const std::vector<CheckDef> all = [] {
    using I = IdealDesc;
    const auto half = I::density(Rational(1, 2));
    const Family every = singles({I::fin(), I::z(), I::logz(), half, I::polya(), I::summable()});
    const Family p_ideals = singles({I::fin(), I::z(), I::logz(), half});
    const Family g_ideals = singles({I::fin(), I::z(), I::logz(), I::polya()});
    const Family nested = {{I::z(), I::fin()},     {I::logz(), I::fin()},  {I::polya(), I::fin()},
                           {I::summable(), I::fin()}, {I::logz(), I::z()}, {I::z(), I::polya()},
                           {I::z(), I::summable()}, {I::logz(), I::polya()}, {half, I::z()}};
    const Family compressible = {{I::z(), I::fin()},  {I::logz(), I::fin()}, {half, I::fin()},
                                 {I::z(), I::z()},    {I::logz(), I::z()},   {I::logz(), I::logz()}};
    const auto exact = 500, oracle = 100;
    return std::vector<CheckDef>{
        {"T1.i", exact, every, mixed, t1_unique},
        {"T1.ii", exact, every, mixed, t1_star_implies_i},
        {"T1.iii", exact, p_ideals, profile(Profile::Convergent), t1_i_implies_star},
        {"T1.iv", exact, g_ideals, profile(Profile::DualPair), t1_g_ideal},
        {"C1", exact, singles({I::z()}), mixed, c1_statistical},
        {"C2", oracle, p_ideals, profile(Profile::Convergent), c2_decompose},
        {"D-double", oracle, singles({I::density_pr()}), gen_double, d_double},
        {"L3.i", exact, nested, profile(Profile::Generic), l3_monotone},
        {"L3.ii", exact, singles({I::fin()}), profile(Profile::Generic), l3_fin},
        {"L3.iii", exact, every, profile(Profile::Generic), l3_lambda_in_gamma},
        {"L3.iv", exact, every, profile(Profile::Generic), l3_closed},
        {"L3.v", exact, every, gen_mutated, l3_equivalent},
        {"L3.vi", exact, every, gen_compact, [](const Instance& in) { return l3_compact(in, false); }},
        {"L3.vii", exact, every, mixed, l3_star},
        {"L-conv", exact, every, profile(Profile::CompactValued), l_conv},
        {"C-K", exact, every, mixed, c_k},
        {"L-grp.i", exact, every, profile(Profile::GroupPair), grp_cluster},
        {"L-grp.ii", exact, every, profile(Profile::GroupPair), grp_limit},
        {"L-Cl", exact, compressible, profile(Profile::Generic), l_cl},
        {"L-easy", exact, every, gen_valued, l_easy},
        {"T-top", exact, every, gen_valued, t_top},
        {"L-fb", exact, every, gen_witnesses, l_fb},
        {"T-fb", exact, every, gen_witnesses, t_fb},
        {"T-attr", exact, every, gen_attr, t_attr},
        {"NC-G", exact, singles({I::fin()}), gen_non_g, nc_g},
        {"NC-L3.vi", exact, every, gen_far, [](const Instance& in) { return l3_compact(in, true); }},
    };
  }();
  return all;
}

const CheckDef& find(const std::string& id) {
  for (const auto& d : defs())
    if (d.id == id)
      return d;
  throw UnknownCheckId("unknown check id '" + id + "'");
}

std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t fnv(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s)
    h = (h ^ c) * 0x100000001b3ULL;
  return h;
}

Failure guarded(const CheckDef& d, const Instance& in) {
  try {
    return d.prop(in);
  } catch (const std::exception& e) {
    return std::string("exception: ") + e.what();
  }
}

} // namespace

const std::vector<std::string>& catalog() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& d : defs())
      if (d.id.rfind("NC-", 0) != 0)
        out.push_back(d.id);
    return out;
  }();
  return ids;
}

const std::vector<std::string>& negative_controls() {
  static const std::vector<std::string> ids{"NC-G", "NC-L3.vi"};
  return ids;
}

int default_trials(const std::string& id) { return find(id).trials; }

Verdict check(const CheckSpec& spec) {
  const CheckDef& d = find(spec.id);
  const int trials = spec.trials > 0 ? spec.trials : d.trials;
  const Family family = spec.ideals.empty() ? d.family : [&] {
    Family f;
    for (const auto& i : spec.ideals)
      f.push_back({i, d.family.front().second ? std::optional<IdealDesc>(IdealDesc::fin()) : std::nullopt});
    return f;
  }();

  struct Outcome {
    std::optional<Instance> instance;
    std::string explanation;
  };
  std::vector<std::optional<Outcome>> failures(static_cast<std::size_t>(trials));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int t; (t = next++) < trials;) {
      Rng rng(splitmix(spec.seed ^ splitmix(fnv(d.id) + static_cast<std::uint64_t>(t))));
      const auto& [ideal, smaller] = family[static_cast<std::size_t>(t) % family.size()];
      std::optional<Instance> in;
      Failure f;
      try {
        in = d.gen(rng, ideal, smaller);
        f = guarded(d, *in);
      } catch (const std::exception& e) {
        f = std::string("generator: ") + e.what();
      }
      if (f)
        failures[static_cast<std::size_t>(t)] = Outcome{in, *f};
    }
  };
  const unsigned n = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < n; ++k)
    pool.emplace_back(worker);
  for (auto& th : pool)
    th.join();

  Verdict v{d.id, true, trials, spec.seed, std::nullopt};
  for (std::size_t t = 0; t < failures.size(); ++t)
    if (failures[t]) {
      v.pass = false;
      v.counterexample = json{{"trial", t},
                              {"instance", failures[t]->instance ? to_json(*failures[t]->instance) : json()},
                              {"explanation", failures[t]->explanation}};
      break;
    }
  return v;
}

std::vector<Verdict> run_all(std::uint64_t seed) {
  std::vector<Verdict> out;
  for (const auto& id : catalog())
    out.push_back(check({id, 0, seed, {}}));
  return out;
}

std::optional<std::string> recheck(const std::string& id, const Instance& inst) {
  return guarded(find(id), inst);
}

json to_json(const Verdict& v) {
  return {{"id", v.id},
          {"pass", v.pass},
          {"trials", v.trials},
          {"seed", v.seed},
          {"counterexample", v.counterexample ? *v.counterexample : json()}};
}

} // namespace idealconv
