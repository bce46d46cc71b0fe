#include "idealconv/sequences.hpp"

#include <algorithm>
#include <set>

#include "idealconv/errors.hpp"

namespace idealconv {

namespace {

bool surely_empty(const NatSet& s) {
  if (s.is_ap())
    return s.ap().is_empty();
  try {
    auto e = s.finite_elements();
    return e && e->empty();
  } catch (const Undecidable&) {
    return false;
  }
}

std::optional<bool> try_in(const IdealDesc& ideal, const NatSet& s) {
  return try_member(ideal, AnySet(s));
}

// All sets in I, answered per set so that a union never has to be decided.
// nullopt when no set is known to be outside I but some are undecided.
std::optional<bool> all_in(const IdealDesc& ideal, const std::vector<NatSet>& sets) {
  bool unknown = false;
  for (const auto& s : sets) {
    auto m = try_in(ideal, s);
    if (m && !*m)
      return false;
    unknown = unknown || !m;
  }
  if (unknown)
    return std::nullopt;
  return true;
}

bool require(std::optional<bool> v, const std::string& what) {
  if (!v)
    throw Undecidable(what);
  return *v;
}

// Bounded pieces with limit other than l, and every unbounded piece.
std::vector<NatSet> far_supports(const SymSeq& x, const Rational& l, const Rational& eps) {
  std::vector<NatSet> out;
  for (const auto& p : x.pieces()) {
    auto q = p.term.limit();
    if (!q || abs(*q - l) > eps)
      out.push_back(p.support);
  }
  return out;
}

std::vector<Rational> radii(std::vector<Rational> d) {
  std::sort(d.begin(), d.end());
  d.erase(std::unique(d.begin(), d.end()), d.end());
  d.erase(std::remove(d.begin(), d.end(), Rational(0)), d.end());
  if (d.empty())
    return {1};
  std::vector<Rational> eps{d.front() / 2};
  for (std::size_t i = 0; i + 1 < d.size(); ++i)
    eps.push_back((d[i] + d[i + 1]) / 2);
  eps.push_back(d.back() + 1);
  return eps;
}

} // namespace

SymSeq::SymSeq(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty())
    throw InvalidArgument("a sequence needs at least one piece");
  std::vector<NatSet> supports;
  for (const auto& p : pieces_)
    supports.push_back(p.support);
  if (!NatSet::unite_all(supports).complement().is_empty())
    throw InvalidArgument("piece supports do not cover ω");
  for (std::size_t i = 0; i < supports.size(); ++i)
    for (std::size_t j = i + 1; j < supports.size(); ++j)
      if (!supports[i].intersect(supports[j]).is_empty())
        throw InvalidArgument("piece supports " + supports[i].describe() + " and " +
                              supports[j].describe() + " overlap");
}

SymSeq SymSeq::constant(Rational q) {
  return trusted({{NatSet(APSet::all()), Term::constant(std::move(q))}});
}

SymSeq SymSeq::trusted(std::vector<Piece> pieces) { return SymSeq(Unchecked{}, std::move(pieces)); }

std::size_t SymSeq::piece_of(nat n) const {
  for (std::size_t i = 0; i < pieces_.size(); ++i)
    if (pieces_[i].support.contains(n))
      return i;
  throw InvalidArgument("no piece contains " + std::to_string(n));
}

std::vector<Rational> SymSeq::piece_limits() const {
  std::vector<Rational> out;
  for (const auto& p : pieces_)
    if (auto q = p.term.limit())
      out.push_back(*q);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SymSeq SymSeq::simplified() const {
  std::vector<Piece> out;
  for (const auto& p : pieces_) {
    if (surely_empty(p.support))
      continue;
    auto it = std::find_if(out.begin(), out.end(), [&](const Piece& o) {
      return p.term.is_constant() && o.term.is_constant() && o.term.offset() == p.term.offset();
    });
    if (it == out.end())
      out.push_back(p);
    else
      it->support = it->support.unite(p.support);
  }
  if (out.empty())
    return *this;
  return trusted(std::move(out));
}

std::string SymSeq::describe() const {
  std::string out;
  for (std::size_t i = 0; i < pieces_.size(); ++i)
    out += (i ? "; " : "") + pieces_[i].term.describe() + " on " + pieces_[i].support.describe();
  return out;
}

Rational eval(const SymSeq& x, nat n) {
  if (n < 1)
    throw InvalidArgument("sequences are indexed from 1");
  const auto& p = x.pieces()[x.piece_of(n)];
  return p.term.value(n, p.support);
}

SymSeq subtract(const SymSeq& x, const SymSeq& y) {
  std::vector<Piece> out;
  for (const auto& a : x.pieces())
    for (const auto& b : y.pieces()) {
      NatSet s = a.support.intersect(b.support);
      if (surely_empty(s))
        continue;
      out.push_back({s, a.term.anchored(a.support) - b.term.anchored(b.support)});
    }
  if (out.empty())
    throw InvalidArgument("refinement of two partitions came out empty");
  return SymSeq::trusted(std::move(out));
}

NatSet level_set(const SymSeq& x, const Rational& l, const Rational& eps) {
  if (eps <= 0)
    throw InvalidArgument("eps must be positive");
  std::vector<NatSet> parts;
  for (const auto& p : x.pieces()) {
    const Term& t = p.term;
    auto far = [&](nat n, nat pos) { return abs(t.value(n, p.support, pos) - l) >= eps; };
    std::vector<nat> flip; // members of the support whose side differs from the tail's
    bool tail_far = true;
    if (t.is_unbounded()) {
      // |x_n| >= U n - C, with U the total linear slope and C bounding the rest
      Rational slope = 0, rest = abs(t.offset());
      for (const auto& c : t.parts())
        (c.kind == Component::Kind::Linear ? slope : rest) += abs(c.c);
      nat last = static_cast<nat>(floor((abs(l) + eps + rest) / slope));
      nat pos = 0;
      for (nat n = 1; n <= last; ++n)
        if (p.support.contains(n) && !far(n, ++pos))
          flip.push_back(n);
    } else {
      Rational gap = abs(t.offset() - l);
      if (gap == eps)
        throw InvalidArgument("eps " + to_string(eps) + " sits on a piece-limit distance");
      tail_far = gap > eps;
      nat k_max = t.is_constant() ? 0 : t.settle_position(abs(gap - eps));
      for (nat k = 1; k <= k_max; ++k) {
        nat n;
        try {
          n = p.support.enumerate(k);
        } catch (const FiniteSetExhausted&) {
          break;
        }
        if (far(n, k) != tail_far)
          flip.push_back(n);
      }
    }
    NatSet f(APSet::finite(flip));
    parts.push_back(tail_far ? p.support.minus(f) : f);
  }
  return NatSet::unite_all(parts);
}

std::vector<Rational> critical_eps(const SymSeq& x, const Rational& l) {
  std::vector<Rational> d;
  for (const auto& q : x.piece_limits())
    d.push_back(abs(q - l));
  return radii(std::move(d));
}

LimitReport ideal_lim(const SymSeq& x, const IdealDesc& ideal) {
  LimitReport r;
  const auto limits = x.piece_limits();
  for (const auto& l : limits) {
    auto ok = all_in(ideal, far_supports(x, l, 0));
    if (!require(ok, "membership of the level sets around " + to_string(l) + " in " + ideal.name()))
      continue;
    r.limit = l;
    for (const auto& eps : critical_eps(x, l))
      r.certificate.push_back({eps, level_set(x, l, eps), true});
    return r;
  }
  return r;
}

StarReport istar_lim(const SymSeq& x, const IdealDesc& ideal) {
  StarReport r;
  auto lim = ideal_lim(x, ideal);
  if (!lim.limit) {
    r.reason = "not " + ideal.name() + "-convergent";
    return r;
  }
  auto bad = far_supports(x, *lim.limit, 0);
  NatSet small = NatSet::unite_all(bad);
  if (ideal.is_p()) {
    // the level sets for ε → 0 stabilize up to finite sets, so the family is finite
    std::vector<AnySet> family;
    for (const auto& eps : critical_eps(x, *lim.limit)) {
      auto level = far_supports(x, *lim.limit, eps);
      family.push_back(AnySet(NatSet::unite_all(level)));
    }
    try {
      const AnySet w = pideal_witness(ideal, SetFamily::finite(family));
      if (w.is_nat())
        small = w.nat_set();
    } catch (const Undecidable&) {
      // the pieces are in I one by one, so their union is a direct witness
    }
  }
  r.limit = lim.limit;
  r.witness = small.complement();
  return r;
}

namespace {

// Γ and Λ coincide here: the union of the supports with limit l is I-positive
// iff one of them is, ideals being closed under finite unions.
ClusterReport clusters(const SymSeq& x, const IdealDesc& ideal) {
  ClusterReport r;
  std::vector<NatSet> divergent;
  for (const auto& p : x.pieces())
    if (!p.term.limit())
      divergent.push_back(p.support);
  for (const auto& l : x.piece_limits()) {
    std::vector<NatSet> near;
    for (const auto& p : x.pieces())
      if (auto q = p.term.limit(); q && *q == l)
        near.push_back(p.support);
    if (!require(all_in(ideal, near), "positivity of the pieces with limit " + to_string(l)))
      r.points.push_back(l);
  }
  if (!divergent.empty()) {
    r.divergent = NatSet::unite_all(divergent);
    r.divergent_in_ideal = all_in(ideal, divergent);
  }
  return r;
}

} // namespace

std::string ClusterReport::str(const std::string& symbol) const {
  std::string out = symbol + " = {";
  for (std::size_t i = 0; i < points.size(); ++i)
    out += (i ? ", " : "") + to_string(points[i]);
  return out + "}";
}

ClusterReport cluster_points(const SymSeq& x, const IdealDesc& ideal) { return clusters(x, ideal); }
ClusterReport limit_points(const SymSeq& x, const IdealDesc& ideal) { return clusters(x, ideal); }

NatSet nonzero_support(const SymSeq& x) {
  std::vector<NatSet> out;
  for (const auto& p : x.pieces())
    if (p.term.eventually_nonzero())
      out.push_back(p.support);
  return NatSet::unite_all(out);
}

bool equivalent(const SymSeq& x, const SymSeq& y, const IdealDesc& ideal) {
  std::vector<NatSet> differ;
  const SymSeq d = subtract(x, y);
  for (const auto& p : d.pieces()) {
    if (try_in(ideal, p.support) == true)
      continue;
    if (p.term.eventually_nonzero())
      differ.push_back(p.support);
  }
  return require(all_in(ideal, differ), "membership of the disagreement set in " + ideal.name());
}

Decomposition decompose(const SymSeq& x, const IdealDesc& ideal, const Rational& l) {
  if (!ideal.is_p())
    throw NotAPIdeal(ideal.name() + " is not a P-ideal");
  auto lim = ideal_lim(x, ideal);
  if (!lim.limit || *lim.limit != l)
    throw NotConvergent("x does not " + ideal.name() + "-converge to " + to_string(l));
  auto star = istar_lim(x, ideal);
  NatSet bad = star.witness.complement();
  // the far pieces make up the bad set; the others keep their values in y
  std::vector<Piece> y{{bad, Term::constant(l)}}, z{{star.witness, Term::constant(0)}};
  for (const auto& p : x.pieces()) {
    auto q = p.term.limit();
    if (q && *q == l)
      y.push_back({p.support.intersect(star.witness), p.term.anchored(p.support)});
    else
      z.push_back({p.support, p.term.shifted(-l)});
  }
  Decomposition d{SymSeq::trusted(std::move(y)).simplified(), SymSeq::trusted(std::move(z)).simplified()};
  auto ylim = ideal_lim(d.y, IdealDesc::fin());
  if (!ylim.limit || *ylim.limit != l)
    throw std::logic_error("decompose: y does not converge to " + to_string(l));
  std::vector<NatSet> zs;
  for (const auto& p : d.z.pieces())
    if (p.term.eventually_nonzero())
      zs.push_back(p.support);
  if (!require(all_in(ideal, zs), "membership of the support of z"))
    throw std::logic_error("decompose: z is not supported on a set of " + ideal.name());
  for (nat n = 1; n <= 500; ++n)
    if (eval(x, n) != eval(d.y, n) + eval(d.z, n))
      throw std::logic_error("decompose: x != y + z at " + std::to_string(n));
  return d;
}

namespace {

// {k : enumerate(frame, k) ∈ s}, as a finite AP set when s ∩ frame is decidably finite.
NatSet pullback(const NatSet& frame, const NatSet& s) {
  NatSet meet = s.intersect(frame);
  auto fin = meet.try_finite();
  if (fin && *fin) {
    return NatSet(APSet::finite(frame.counts(*meet.finite_elements())));
  }
  return NatSet::preimage(frame, s);
}

} // namespace

SymSeq subseq_on(const SymSeq& x, const NatSet& s) {
  if (require(s.try_finite(), "finiteness of " + s.describe()))
    throw InvalidArgument("subsequence index set must be infinite");
  std::vector<Piece> out;
  for (const auto& p : x.pieces()) {
    NatSet support = pullback(s, p.support);
    if (surely_empty(support))
      continue;
    out.push_back({support, p.term.anchored(p.support).along(s)});
  }
  return SymSeq::trusted(std::move(out));
}

SymSeq compress(const SymSeq& x, const IdealDesc& ideal, const IdealDesc& smaller) {
  if (!ideal.is_p())
    throw NotAPIdeal(ideal.name() + " is not a P-ideal");
  if (!ideal_subset(smaller, ideal))
    throw InvalidArgument(smaller.name() + " is not known to be contained in " + ideal.name());
  const auto gamma = cluster_points(x, ideal).points;
  const auto gamma_small = cluster_points(x, smaller).points;
  std::vector<Rational> delta;
  std::set_difference(gamma_small.begin(), gamma_small.end(), gamma.begin(), gamma.end(),
                      std::back_inserter(delta));
  if (delta.empty())
    return x;

  const auto limits = x.piece_limits();
  Rational radius = 1;
  if (limits.size() > 1)
    radius = (limits[1] - limits[0]) / 2;
  for (std::size_t i = 0; i + 1 < limits.size(); ++i)
    radius = std::min(radius, Rational((limits[i + 1] - limits[i]) / 2));

  std::vector<AnySet> family;
  for (const auto& z : delta) // increasing order
    family.push_back(AnySet(level_set(x, z, radius).complement()));
  AnySet k_any = pideal_witness(ideal, SetFamily::finite(family));
  if (!k_any.is_nat())
    throw Undecidable("the diagonal set left the exact class");
  const NatSet k = k_any.nat_set();
  const NatSet rest = k.complement(); // (i_n) enumerates it

  std::vector<Piece> out;
  for (const auto& p : x.pieces()) {
    Term t = p.term.anchored(p.support);
    NatSet kept = p.support.minus(k);
    if (!surely_empty(kept))
      out.push_back({kept, t});
    NatSet moved = k.intersect(pullback(rest, p.support));
    if (!surely_empty(moved))
      out.push_back({moved, t.along(rest)});
  }
  SymSeq y = SymSeq::trusted(std::move(out));
  if (cluster_points(y, smaller).points != gamma)
    throw std::logic_error("compress: cluster points of y differ");
  if (!equivalent(x, y, ideal))
    throw std::logic_error("compress: y is not equivalent to x");
  return y;
}

Closure filter_base_closures(const SymSeq& x, const IdealDesc& ideal,
                             const std::vector<NatSet>& witnesses) {
  std::vector<NatSet> ws = witnesses;
  if (ws.empty())
    ws.push_back(NatSet(APSet()));
  Closure c;
  bool first = true;
  for (const auto& w : ws) {
    if (!require(try_in(ideal, w), "membership of the witness " + w.describe()))
      throw HypothesisViolated(w.describe() + " is not in " + ideal.name());
    std::vector<Rational> pts;
    bool unbounded = false;
    for (const auto& p : x.pieces()) {
      if (require(p.support.minus(w).try_finite(), "finiteness off " + w.describe()))
        continue;
      if (auto q = p.term.limit())
        pts.push_back(*q);
      else
        unbounded = true;
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (first) {
      c.points = pts;
      c.unbounded = unbounded;
      first = false;
    } else {
      std::vector<Rational> both;
      std::set_intersection(c.points.begin(), c.points.end(), pts.begin(), pts.end(),
                            std::back_inserter(both));
      c.points = both;
      c.unbounded = c.unbounded && unbounded;
    }
  }
  return c;
}

AttractorReport smallest_closed_attractor_check(const SymSeq& x, const IdealDesc& ideal,
                                                const std::vector<Interval>& c) {
  auto cl = cluster_points(x, ideal);
  if (cl.divergent && !require(cl.divergent_in_ideal, "membership of the unbounded mass"))
    throw HypothesisViolated("the unbounded pieces are not confined to a set of " + ideal.name());
  for (const auto& iv : c)
    if (iv.lo > iv.hi)
      throw InvalidArgument("empty interval [" + to_string(iv.lo) + ", " + to_string(iv.hi) + "]");

  auto dist = [&c](const Rational& q) -> std::optional<Rational> {
    std::optional<Rational> best;
    for (const auto& iv : c) {
      Rational d = q < iv.lo ? iv.lo - q : q > iv.hi ? q - iv.hi : Rational(0);
      if (!best || d < *best)
        best = d;
    }
    return best;
  };

  AttractorReport r;
  r.gamma = cl.points;
  std::vector<Rational> ds;
  for (const auto& q : x.piece_limits())
    if (auto d = dist(q))
      ds.push_back(*d);
  // the smallest fattening is the binding one, larger ones only shrink the outside
  r.attracts = true;
  for (const auto& eps : radii(ds)) {
    std::vector<NatSet> outside;
    for (const auto& p : x.pieces()) {
      auto q = p.term.limit();
      if (!q)
        continue;
      auto d = dist(*q);
      if (!d || *d > eps)
        outside.push_back(p.support);
    }
    if (!require(all_in(ideal, outside), "membership of the points outside a fattening")) {
      r.attracts = false;
      break;
    }
  }
  r.contains_gamma = std::all_of(r.gamma.begin(), r.gamma.end(), [&](const Rational& g) {
    auto d = dist(g);
    return d && *d == 0;
  });
  r.minimal = r.contains_gamma && std::all_of(c.begin(), c.end(), [&](const Interval& iv) {
    return iv.lo == iv.hi && std::binary_search(r.gamma.begin(), r.gamma.end(), iv.lo);
  });
  return r;
}

DoubleSeq::DoubleSeq(std::vector<DoublePiece> pieces) : pieces_(std::move(pieces)) {
  auto empty = [](const PairSet& a) { return a.rects().empty() && a.includes().empty(); };
  PairSet all;
  for (const auto& p : pieces_)
    all = all.unite(p.support);
  if (!empty(all.complement()))
    throw InvalidArgument("double sequence pieces do not cover ω×ω");
  for (std::size_t i = 0; i < pieces_.size(); ++i)
    for (std::size_t j = i + 1; j < pieces_.size(); ++j)
      if (!empty(pieces_[i].support.intersect(pieces_[j].support)))
        throw InvalidArgument("double sequence pieces overlap");
}

Rational DoubleSeq::eval(nat i, nat j) const {
  for (const auto& p : pieces_)
    if (p.support.contains(i, j))
      return p.value;
  throw InvalidArgument("no piece contains (" + std::to_string(i) + ", " + std::to_string(j) + ")");
}

PairSet DoubleSeq::off(const Rational& l) const {
  PairSet out;
  for (const auto& p : pieces_)
    if (p.value != l)
      out = out.unite(p.support);
  return out;
}

DoubleDecomposition decompose_double(const DoubleSeq& x, const Rational& l) {
  const PairSet bad = x.off(l);
  if (!member(IdealDesc::density_pr(), bad))
    throw NotConvergent("x is not Z_Pr-convergent to " + to_string(l) + ": " + bad.describe() +
                        " has measure " + to_string(bad.limit_measure()));
  std::vector<DoublePiece> y{{bad, l}}, z{{bad.complement(), 0}};
  for (const auto& p : x.pieces()) {
    if (p.value == l)
      y.push_back(p);
    else
      z.push_back({p.support, p.value - l});
  }
  DoubleDecomposition d{DoubleSeq(std::move(y)), DoubleSeq(std::move(z))};
  if (!member(IdealDesc::pringsheim(), d.y.off(l)) || !member(IdealDesc::density_pr(), d.z.off(0)))
    throw std::logic_error("decompose_double: postconditions failed");
  return d;
}

} // namespace idealconv
