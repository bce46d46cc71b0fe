#include "idealconv/ideals.hpp"

#include "idealconv/errors.hpp"

namespace idealconv {

namespace {

// Oracle lower bounds below this are not taken as evidence of positivity.
const Rational kOraclePositive(1, 100);

// `oracle_negative`: whether a lower bound above the threshold may be trusted.
// For log density a single early element still weighs ~1/ln(budget), so not there.
std::optional<bool> zero_test(const DensityReport& r, bool oracle_negative = true) {
  if (r.exact)
    return r.value() == 0;
  if (oracle_negative && r.lo >= kOraclePositive)
    return false;
  if (r.hi == 0)
    return true;
  return std::nullopt;
}

std::optional<bool> finite_test(const AnySet& s) {
  if (s.is_nat())
    return s.nat_set().try_finite();
  if (s.is_block())
    return s.block_set().is_finite();
  return std::nullopt;
}

// Every preimage frame inside has positive density.
bool frames_dense(const NatSet& s) {
  if (s.kind() == NatSet::Kind::Pre) {
    auto d = s.frame().try_density();
    if (!d || *d == 0)
      return false;
    return frames_dense(s.frame()) && frames_dense(s.inner());
  }
  for (const auto& k : s.children())
    if (!frames_dense(k))
      return false;
  return true;
}

std::optional<bool> summable_test(const AnySet& s) {
  if (s.is_block())
    return s.block_set().is_finite();
  if (!s.is_nat())
    return std::nullopt;
  const NatSet& n = s.nat_set();
  auto d = n.try_density();
  if (!d)
    return std::nullopt;
  if (*d > 0)
    return false;
  if (frames_dense(n))
    return true;
  auto fin = n.try_finite();
  if (fin && *fin)
    return true;
  return std::nullopt;
}

} // namespace

IdealDesc IdealDesc::density(Rational alpha) {
  if (alpha < -1)
    throw InvalidAlpha("alpha must be >= -1, got " + to_string(alpha));
  return {Kind::Density, std::move(alpha)};
}

IdealDesc IdealDesc::parse(const std::string& name) {
  if (name == "fin")
    return fin();
  if (name == "z")
    return z();
  if (name == "logz")
    return logz();
  if (name == "polya")
    return polya();
  if (name == "sum:1/n")
    return summable();
  if (name == "pr")
    return pringsheim();
  if (name == "zpr")
    return density_pr();
  if (name.rfind("alpha:", 0) == 0)
    return density(parse_rational(name.substr(6)));
  throw SchemaError("unknown ideal '" + name + "'");
}

std::string IdealDesc::name() const {
  std::string base;
  switch (kind) {
  case Kind::Fin:
    base = "fin";
    break;
  case Kind::Density:
    base = alpha == 0 ? "z" : alpha == -1 ? "logz" : "alpha:" + to_string(alpha);
    break;
  case Kind::Polya:
    base = "polya";
    break;
  case Kind::Summable:
    base = "sum:1/n";
    break;
  case Kind::Pringsheim:
    base = "pr";
    break;
  case Kind::DensityPr:
    base = "zpr";
    break;
  }
  return via_pairing ? base + "@omega" : base;
}

bool IdealDesc::is_p() const {
  return kind == Kind::Fin || kind == Kind::Density || kind == Kind::DensityPr;
}

bool IdealDesc::is_g() const {
  return kind == Kind::Fin || kind == Kind::Density || kind == Kind::Polya;
}

namespace {

std::optional<bool> direct_member(const IdealDesc& ideal, const AnySet& s, bool oracle);

// Exact answers only. Ideals are hereditary and closed under finite unions.
std::optional<bool> structural_member(const IdealDesc& ideal, const NatSet& s) {
  if (auto m = direct_member(ideal, AnySet(s), false))
    return m;
  if (s.kind() == NatSet::Kind::And) {
    for (const auto& k : s.children())
      if (structural_member(ideal, k) == true)
        return true;
  } else if (s.kind() == NatSet::Kind::Or) {
    bool all = true;
    for (const auto& k : s.children()) {
      auto m = structural_member(ideal, k);
      if (m == false)
        return false;
      all = all && m == true;
    }
    if (all)
      return true;
  }
  return std::nullopt;
}

} // namespace

std::optional<bool> try_member(const IdealDesc& ideal, const AnySet& s) {
  if (!ideal.on_pairs() && s.is_nat())
    if (auto m = structural_member(ideal, s.nat_set()))
      return m;
  return direct_member(ideal, s, true);
}

namespace {

std::optional<bool> direct_member(const IdealDesc& ideal, const AnySet& s, bool oracle) {
  if (ideal.on_pairs())
    throw InvalidArgument(ideal.name() + " is an ideal on ω×ω");
  if (ideal.via_pairing) {
    auto fin = finite_test(s);
    if (fin && *fin)
      return true;
    auto cofin = finite_test(s.complement());
    if (cofin && *cofin)
      return false;
    return std::nullopt;
  }
  switch (ideal.kind) {
  case IdealDesc::Kind::Fin:
    return finite_test(s);
  case IdealDesc::Kind::Density:
  case IdealDesc::Kind::Polya:
    // every functional vanishes on a block set iff finitely many blocks are selected
    if (s.is_block())
      return s.block_set().selector().residues().empty();
    if (finite_test(s) == true)
      return true;
    if (!oracle) {
      if (s.is_nat())
        if (auto d = s.nat_set().try_density())
          return *d == 0;
      return std::nullopt;
    }
    if (ideal.kind == IdealDesc::Kind::Polya)
      return zero_test(polya_upper(s));
    return zero_test(weighted_upper_density(s, ideal.alpha), ideal.alpha > -1);
  case IdealDesc::Kind::Summable:
    return summable_test(s);
  default:
    break;
  }
  return std::nullopt;
}

} // namespace

bool member(const IdealDesc& ideal, const AnySet& s) {
  auto m = try_member(ideal, s);
  if (!m)
    throw Undecidable("membership of " + s.describe() + " in " + ideal.name());
  return *m;
}

bool in_dual(const IdealDesc& ideal, const AnySet& s) { return member(ideal, s.complement()); }
bool positive(const IdealDesc& ideal, const AnySet& s) { return !member(ideal, s); }

bool member(const IdealDesc& ideal, const PairSet& a) {
  if (ideal.kind == IdealDesc::Kind::Pringsheim) {
    // rows beyond some N must be uniformly bounded
    for (const auto& r : a.rects())
      if (!r.rows.is_finite() && !r.cols.is_finite())
        return false;
    return true;
  }
  if (ideal.kind == IdealDesc::Kind::DensityPr)
    return a.limit_measure() == 0;
  throw InvalidArgument(ideal.name() + " is an ideal on ω");
}

bool in_dual(const IdealDesc& ideal, const PairSet& a) { return member(ideal, a.complement()); }
bool positive(const IdealDesc& ideal, const PairSet& a) { return !member(ideal, a); }

bool ideal_subset(const IdealDesc& j, const IdealDesc& i) {
  using K = IdealDesc::Kind;
  if (j == i)
    return true;
  if (j.on_pairs() || i.on_pairs() || j.via_pairing || i.via_pairing)
    return false;
  if (j.kind == K::Fin)
    return true;
  const bool i_z_or_log = i.kind == K::Density && (i.alpha == 0 || i.alpha == -1);
  if ((j.kind == K::Polya || j.kind == K::Summable) && i_z_or_log)
    return true;
  return j == IdealDesc::z() && i == IdealDesc::logz();
}

AnySet pideal_witness(const IdealDesc& ideal, const SetFamily& family) {
  if (!ideal.is_p())
    throw NotAPIdeal(ideal.name() + " is not a P-ideal");
  if (family.form == SetFamily::Form::Opaque)
    throw UnsupportedFamily("the family neither is finite nor stabilizes");
  AnySet acc = NatSet(APSet());
  for (const auto& s : family.sets) {
    if (!member(ideal, s))
      throw HypothesisViolated(s.describe() + " is not in " + ideal.name());
    acc = acc.unite(s);
  }
  return acc;
}

PairSet pideal_witness(const IdealDesc& ideal, const std::vector<PairSet>& family) {
  if (!ideal.is_p() || !ideal.on_pairs())
    throw NotAPIdeal(ideal.name() + " is not a P-ideal on ω×ω");
  PairSet acc;
  for (const auto& a : family) {
    if (!member(ideal, a))
      throw HypothesisViolated(a.describe() + " is not in " + ideal.name());
    acc = acc.unite(a);
  }
  return acc;
}

ReindexReport gideal_reindex_check(const IdealDesc& ideal, const APSet& a, const APSet& b) {
  if (!ideal.is_g())
    throw NotAGIdeal(ideal.name() + " is not a G-ideal");
  ReindexReport r;
  r.ab = reindex(a, b);
  r.a_in_dual = in_dual(ideal, a);
  r.b_in_dual = in_dual(ideal, b);
  r.ab_in_dual = in_dual(ideal, r.ab);
  r.pass = !r.a_in_dual || r.b_in_dual == r.ab_in_dual;
  return r;
}

IdealDesc to_omega_ideal(const IdealDesc& pair_ideal) {
  if (pair_ideal.kind != IdealDesc::Kind::Pringsheim && pair_ideal.kind != IdealDesc::Kind::DensityPr)
    throw InvalidArgument("only pr and zpr live on ω×ω");
  IdealDesc out = pair_ideal;
  out.via_pairing = true;
  return out;
}

bool member_image(const IdealDesc& omega_ideal, const PairSet& a) {
  IdealDesc base = omega_ideal;
  base.via_pairing = false;
  return member(base, a);
}

} // namespace idealconv
