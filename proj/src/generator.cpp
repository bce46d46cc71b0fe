#include <algorithm>
#include <numeric>

#include "idealconv/errors.hpp"
#include "idealconv/theorems.hpp"

namespace idealconv {

namespace {

nat uniform(Rng& rng, nat lo, nat hi) { return std::uniform_int_distribution<nat>(lo, hi)(rng); }
bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

// Height <= 10, biased towards small integers so that piece-limits collide.
Rational random_value(Rng& rng) {
  if (coin(rng, 0.6))
    return uniform(rng, -2, 3);
  return Rational(uniform(rng, -10, 10)) / uniform(rng, 1, 10);
}

Rational nonzero(Rng& rng) {
  Rational c = 0;
  while (c == 0)
    c = Rational(uniform(rng, -10, 10)) / uniform(rng, 1, 10);
  return c;
}

Rational ratio(Rng& rng) {
  nat q = uniform(rng, 2, 10);
  return Rational(uniform(rng, -(q - 1), q - 1)) / q;
}

Term converging_to(Rng& rng, const Rational& l) {
  switch (uniform(rng, 0, 2)) {
  case 0:
    return Term::constant(l);
  case 1:
    return Term::harmonic(l, nonzero(rng));
  default:
    return Term::geometric(l, nonzero(rng), ratio(rng));
  }
}

Term random_term(Rng& rng) {
  nat r = uniform(rng, 0, 99);
  if (r < 15)
    return Term::unbounded(nonzero(rng));
  if (r < 55)
    return Term::constant(random_value(rng));
  return converging_to(rng, random_value(rng));
}

NatSet sparse(Rng& rng) {
  nat m = uniform(rng, 1, 4);
  return NatSet::power(static_cast<int>(uniform(rng, 2, 3)), APSet::residue(uniform(rng, 0, m - 1), m));
}

// Random partition of the residues mod M into at most five classes, with an
// optional sparse carve-out.
std::vector<NatSet> random_partition(Rng& rng) {
  nat m = uniform(rng, 1, 24);
  nat k = uniform(rng, 1, std::min<nat>(5, m));
  std::vector<nat> res(static_cast<std::size_t>(m));
  std::iota(res.begin(), res.end(), 0);
  std::shuffle(res.begin(), res.end(), rng);
  std::vector<nat> cuts;
  for (nat i = 1; i < m; ++i)
    cuts.push_back(i);
  std::shuffle(cuts.begin(), cuts.end(), rng);
  cuts.resize(static_cast<std::size_t>(k - 1));
  cuts.push_back(0);
  cuts.push_back(m);
  std::sort(cuts.begin(), cuts.end());
  std::vector<NatSet> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    out.emplace_back(APSet(m, {res.begin() + cuts[i], res.begin() + cuts[i + 1]}));
  if (out.size() < 5 && coin(rng, 0.5)) {
    auto i = static_cast<std::size_t>(uniform(rng, 0, static_cast<nat>(out.size()) - 1));
    NatSet s = sparse(rng);
    out.push_back(out[i].intersect(s));
    out[i] = out[i].minus(s);
  }
  return out;
}

} // namespace

SymSeq random_seq(Rng& rng) {
  std::vector<Piece> pieces;
  for (auto& s : random_partition(rng))
    pieces.push_back({s, random_term(rng)});
  return SymSeq::trusted(std::move(pieces));
}

SymSeq make_convergent(Rng& rng, const SymSeq& x, const IdealDesc& ideal) {
  std::vector<Piece> pieces = x.pieces();
  auto bounded = x.piece_limits();
  Rational l = bounded.empty() ? random_value(rng)
                               : bounded[static_cast<std::size_t>(uniform(rng, 0, static_cast<nat>(bounded.size()) - 1))];
  for (auto& p : pieces) {
    auto q = p.term.limit();
    if (q && *q == l)
      continue;
    auto small = try_member(ideal, AnySet(p.support));
    if (!small || !*small)
      p.term = converging_to(rng, l);
  }
  return SymSeq::trusted(std::move(pieces));
}

namespace {

Rational in_interval(Rng& rng, const Interval& iv) {
  return iv.lo + (iv.hi - iv.lo) * Rational(uniform(rng, 0, 10), 10);
}

APSet random_rows(Rng& rng) {
  if (coin(rng, 0.5))
    return APSet::prefix(uniform(rng, 0, 6));
  nat m = uniform(rng, 1, 6);
  std::vector<nat> res;
  for (nat r = 0; r < m; ++r)
    if (coin(rng, 0.5))
      res.push_back(r);
  return APSet(m, res);
}

} // namespace

Rational random_point(Rng& rng, const std::vector<Interval>& f) {
  return in_interval(rng, f[static_cast<std::size_t>(uniform(rng, 0, static_cast<nat>(f.size()) - 1))]);
}

std::pair<DoubleSeq, Rational> random_double(Rng& rng) {
  APSet rows = random_rows(rng), cols = random_rows(rng);
  std::vector<PairSet> parts{PairSet({{rows, cols}}), PairSet({{rows, cols.complement()}}),
                             PairSet({{rows.complement(), APSet::all()}})};
  Rational l = random_value(rng);
  std::vector<DoublePiece> pieces;
  const bool converge = coin(rng, 0.5);
  for (auto& p : parts) {
    if (p.rects().empty())
      continue;
    Rational v = random_value(rng);
    if (converge && p.limit_measure() > 0)
      v = l;
    pieces.push_back({p, v});
  }
  return {DoubleSeq(std::move(pieces)), l};
}

Profile parse_profile(const std::string& name) {
  if (name == "generic")
    return Profile::Generic;
  if (name == "convergent")
    return Profile::Convergent;
  if (name == "compact-valued")
    return Profile::CompactValued;
  if (name == "dual-pair")
    return Profile::DualPair;
  if (name == "group-pair")
    return Profile::GroupPair;
  throw SchemaError("unknown profile '" + name + "'");
}

std::string profile_name(Profile p) {
  switch (p) {
  case Profile::Generic:
    return "generic";
  case Profile::Convergent:
    return "convergent";
  case Profile::CompactValued:
    return "compact-valued";
  case Profile::DualPair:
    return "dual-pair";
  case Profile::GroupPair:
    return "group-pair";
  }
  return "generic";
}

NatSet random_small(Rng& rng, const IdealDesc& ideal) {
  std::vector<nat> pts;
  for (nat i = uniform(rng, 0, 5); i > 0; --i)
    pts.push_back(uniform(rng, 1, 100));
  NatSet s(APSet::finite(pts));
  if (ideal.kind != IdealDesc::Kind::Fin && coin(rng, 0.7))
    s = s.unite(sparse(rng));
  return s;
}

NatSet random_large(Rng& rng, const IdealDesc& ideal) { return random_small(rng, ideal).complement(); }

/// Sequence with every value in the union of `f`.
SymSeq random_valued_in(Rng& rng, const std::vector<Interval>& f) {
  std::vector<Piece> pieces;
  for (auto& s : random_partition(rng)) {
    const Interval& iv = f[static_cast<std::size_t>(uniform(rng, 0, static_cast<nat>(f.size()) - 1))];
    Rational q = in_interval(rng, iv), w = in_interval(rng, iv);
    Term t;
    switch (uniform(rng, 0, 2)) {
    case 0:
      t = Term::constant(q);
      break;
    case 1: // between q and w
      t = Term::harmonic(q, w - q);
      break;
    default: {
      nat d = uniform(rng, 2, 10);
      t = Term::geometric(q, w - q, Rational(uniform(rng, 0, d - 1), d));
    }
    }
    pieces.push_back({s, t});
  }
  return SymSeq::trusted(std::move(pieces));
}

std::vector<Interval> random_intervals(Rng& rng) {
  std::vector<Rational> ends;
  for (nat i = 2 * uniform(rng, 1, 3); i > 0; --i)
    ends.push_back(Rational(uniform(rng, -20, 20), 4));
  std::sort(ends.begin(), ends.end());
  std::vector<Interval> out;
  for (std::size_t i = 0; i + 1 < ends.size(); i += 2)
    out.push_back({ends[i], ends[i + 1]});
  return out;
}

Instance generate_instance(std::uint64_t seed, Profile profile, const IdealDesc& ideal) {
  Rng rng(seed);
  Instance inst;
  inst.profile = profile;
  inst.ideal = ideal;
  switch (profile) {
  case Profile::Generic:
    inst.x = random_seq(rng);
    break;
  case Profile::Convergent:
    inst.x = make_convergent(rng, random_seq(rng), ideal);
    break;
  case Profile::CompactValued:
    inst.intervals = {{0, 1}};
    inst.x = random_valued_in(rng, inst.intervals);
    break;
  case Profile::DualPair:
    inst.x = random_seq(rng);
    if (coin(rng, 0.5))
      inst.x = make_convergent(rng, inst.x, ideal);
    inst.sets = {random_large(rng, ideal), random_small(rng, ideal)};
    break;
  case Profile::GroupPair: {
    inst.x = random_seq(rng);
    if (coin(rng, 0.3)) {
      inst.y = random_seq(rng);
      break;
    }
    // y = x + w with w -> 0 off a set of I
    std::vector<Piece> pieces = inst.x.pieces();
    for (auto& p : pieces) {
      auto small = try_member(ideal, AnySet(p.support));
      Term w = small && *small ? random_term(rng) : converging_to(rng, 0);
      p.term = p.term + w;
    }
    inst.y = SymSeq::trusted(std::move(pieces));
    break;
  }
  }
  return inst;
}

json to_json(const Instance& inst) {
  json j = {{"profile", profile_name(inst.profile)}, {"ideal", inst.ideal.name()}, {"x", to_json(inst.x)}};
  if (inst.smaller)
    j["smaller"] = inst.smaller->name();
  if (inst.y)
    j["y"] = to_json(*inst.y);
  if (!inst.sets.empty()) {
    j["sets"] = json::array();
    for (const auto& s : inst.sets)
      j["sets"].push_back(to_json(s));
  }
  if (!inst.intervals.empty()) {
    j["intervals"] = json::array();
    for (const auto& iv : inst.intervals)
      j["intervals"].push_back({to_json(iv.lo), to_json(iv.hi)});
  }
  if (inst.dx)
    j["dx"] = to_json(*inst.dx);
  if (inst.value)
    j["value"] = to_json(*inst.value);
  return j;
}

namespace {

IdealDesc ideal_from_json(const json& j) {
  if (!j.is_string())
    throw SchemaError("an ideal is a name string");
  std::string name = j.get<std::string>();
  const std::string suffix = "@omega";
  if (name.size() > suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
    return to_omega_ideal(IdealDesc::parse(name.substr(0, name.size() - suffix.size())));
  return IdealDesc::parse(name);
}

} // namespace

Instance instance_from_json(const json& j) {
  if (!j.is_object())
    throw SchemaError("an instance is an object");
  Instance inst;
  if (j.contains("profile"))
    inst.profile = parse_profile(j.at("profile").get<std::string>());
  if (j.contains("ideal"))
    inst.ideal = ideal_from_json(j.at("ideal"));
  if (j.contains("smaller"))
    inst.smaller = ideal_from_json(j.at("smaller"));
  if (j.contains("x"))
    inst.x = symseq_from_json(j.at("x"));
  if (j.contains("y"))
    inst.y = symseq_from_json(j.at("y"));
  if (j.contains("sets"))
    for (const auto& s : j.at("sets"))
      inst.sets.push_back(natset_from_json(s));
  if (j.contains("intervals"))
    for (const auto& iv : j.at("intervals")) {
      if (!iv.is_array() || iv.size() != 2)
        throw SchemaError("an interval is [lo, hi]");
      inst.intervals.push_back({rational_from_json(iv[0]), rational_from_json(iv[1])});
    }
  if (j.contains("dx"))
    inst.dx = doubleseq_from_json(j.at("dx"));
  if (j.contains("value"))
    inst.value = rational_from_json(j.at("value"));
  return inst;
}

} // namespace idealconv
