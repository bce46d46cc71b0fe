#include "idealconv/natset.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "idealconv/errors.hpp"

namespace idealconv {

struct NatSet::Node {
  Kind kind = Kind::AP;
  APSet ap;
  int exponent = 1;
  std::vector<NatSet> kids; // Not: 1, And/Or: >= 2, Pre: {frame, inner}
  std::string key;
  std::optional<APSet> projection;
  struct Cache {
    std::once_flag once;
    std::optional<std::vector<nat>> elements;
  };
  std::shared_ptr<Cache> cache = std::make_shared<Cache>();
};

struct NatSetAccess {
  static NatSet make(NatSet::Node node) {
    return NatSet(std::make_shared<const NatSet::Node>(std::move(node)));
  }
};

namespace {

using Kind = NatSet::Kind;

std::string ap_key(const APSet& s) {
  std::ostringstream os;
  os << "A" << s.modulus() << ":";
  for (nat r : s.residues())
    os << r << ",";
  os << "+";
  for (nat r : s.includes())
    os << r << ",";
  os << "-";
  for (nat r : s.excludes())
    os << r << ",";
  return os.str();
}

NatSet make_ap(APSet s) {
  NatSet::Node n;
  n.kind = Kind::AP;
  n.key = ap_key(s);
  n.projection = s;
  n.ap = std::move(s);
  return NatSetAccess::make(std::move(n));
}

std::string join_keys(const std::vector<NatSet>& kids) {
  std::string out;
  for (const auto& k : kids)
    out += k.key() + ";";
  return out;
}

// Does p divide the exponents of nothing? helper for generic evaluation.
struct Atoms {
  std::vector<APSet> aps;
  std::vector<std::pair<int, APSet>> powers;
  nat max_ap_correction = 0;
};

void collect_atoms(const NatSet& s, Atoms& atoms) {
  switch (s.kind()) {
  case Kind::AP:
    atoms.aps.push_back(s.ap());
    atoms.max_ap_correction = std::max(atoms.max_ap_correction, s.ap().max_correction());
    break;
  case Kind::Power:
    atoms.powers.emplace_back(s.power_exponent(), s.power_base());
    break;
  case Kind::Not:
  case Kind::And:
  case Kind::Or:
    for (const auto& k : s.children())
      collect_atoms(k, atoms);
    break;
  case Kind::Pre:
    throw InvalidArgument("collect_atoms on a preimage");
  }
}

// Membership of m = j^L for a generic j in a residue class (corrections ignored).
bool generic_eval(const NatSet& s, nat j, nat L) {
  switch (s.kind()) {
  case Kind::AP:
    return s.ap().periodic_contains(powmod64(j, L, s.ap().modulus()));
  case Kind::Power: {
    nat p = s.power_exponent();
    if (L % p != 0)
      return false;
    const APSet& base = s.power_base();
    return base.periodic_contains(powmod64(j, L / p, base.modulus()));
  }
  case Kind::Not:
    return !generic_eval(s.children()[0], j, L);
  case Kind::And:
    return std::all_of(s.children().begin(), s.children().end(),
                       [&](const NatSet& k) { return generic_eval(k, j, L); });
  case Kind::Or:
    return std::any_of(s.children().begin(), s.children().end(),
                       [&](const NatSet& k) { return generic_eval(k, j, L); });
  case Kind::Pre:
    break;
  }
  throw InvalidArgument("generic_eval on a preimage");
}

// Finiteness of a formula over AP and power atoms.
//
// Points of the power atoms are split by the exponent L = lcm{q : m is a q-th
// power}. Writing m = j^L, membership of m depends only on j modulo the lcm of
// all moduli, except for finitely many j and for a density-zero set of j whose
// j^L is a higher power (those belong to a larger L). So the thin part is
// infinite iff some (L, residue class) evaluates to true generically.
bool plain_is_finite(const NatSet& s) {
  const auto& proj = *s.ap_projection();
  if (!proj.is_finite())
    return false;
  Atoms atoms;
  collect_atoms(s, atoms);
  if (atoms.powers.empty())
    return true;
  nat period = 1;
  for (const auto& a : atoms.aps)
    period = lcm64(period, a.modulus());
  std::set<nat> exps;
  for (const auto& [p, base] : atoms.powers) {
    period = lcm64(period, base.modulus());
    exps.insert(p);
  }
  std::set<nat> closure;
  for (nat e : exps) {
    std::set<nat> next = closure;
    next.insert(e);
    for (nat c : closure)
      next.insert(lcm64(c, e));
    closure = std::move(next);
  }
  for (nat L : closure) {
    for (nat j = 0; j < period; ++j) {
      bool in_atom = false;
      for (const auto& [p, base] : atoms.powers)
        if (L % p == 0 && base.periodic_contains(powmod64(j, L / p, base.modulus())))
          in_atom = true;
      if (in_atom && generic_eval(s, j, L))
        return false;
    }
  }
  return true;
}

// Upper bound on the elements of a finite plain formula (see plain_is_finite).
nat plain_finite_bound(const NatSet& s) {
  Atoms atoms;
  collect_atoms(s, atoms);
  nat bound = std::max<nat>(atoms.max_ap_correction, 1);
  for (const auto& [p, base] : atoms.powers) {
    nat c = ipow_capped(base.max_correction() + 1, p);
    if (c < 0)
      throw Undecidable("finite bound overflow");
    bound = std::max(bound, c);
  }
  return bound;
}

void thin_points(const NatSet& s, nat n, std::set<nat>& out) {
  switch (s.kind()) {
  case Kind::AP:
    return;
  case Kind::Power: {
    nat top = iroot(n, s.power_exponent());
    for (nat k = 1; k <= top; ++k)
      if (s.power_base().contains(k))
        out.insert(ipow_capped(k, s.power_exponent()));
    return;
  }
  case Kind::Not:
  case Kind::And:
  case Kind::Or:
    for (const auto& k : s.children())
      thin_points(k, n, out);
    return;
  case Kind::Pre: {
    const APSet& frame = s.frame().ap();
    if (n < 1)
      return;
    std::set<nat> inner;
    thin_points(s.inner(), frame.enumerate(n), inner);
    for (nat m : inner)
      if (frame.contains(m))
        out.insert(frame.count(m));
    return;
  }
  }
}

// Membership of 1..n in one sweep; index 0 unused.
std::vector<char> bitmap(const NatSet& s, nat n) {
  std::vector<char> out(static_cast<std::size_t>(n + 1), 0);
  switch (s.kind()) {
  case Kind::AP:
  case Kind::Power:
    for (nat m = 1; m <= n; ++m)
      out[m] = s.contains(m);
    return out;
  case Kind::Not:
    out = bitmap(s.children()[0], n);
    for (nat m = 1; m <= n; ++m)
      out[m] = !out[m];
    return out;
  case Kind::And:
  case Kind::Or: {
    const bool is_and = s.kind() == Kind::And;
    out = bitmap(s.children()[0], n);
    for (std::size_t i = 1; i < s.children().size(); ++i) {
      auto other = bitmap(s.children()[i], n);
      for (nat m = 1; m <= n; ++m)
        out[m] = is_and ? (out[m] && other[m]) : (out[m] || other[m]);
    }
    return out;
  }
  case Kind::Pre: {
    if (n < 1)
      return out;
    nat top = s.frame().enumerate(n);
    auto frame = bitmap(s.frame(), top);
    auto inner = bitmap(s.inner(), top);
    nat k = 0;
    for (nat m = 1; m <= top && k < n; ++m)
      if (frame[m])
        out[++k] = inner[m];
    return out;
  }
  }
  return out;
}

} // namespace

NatSet::NatSet() : NatSet(make_ap(APSet())) {}

NatSet::NatSet(APSet ap) : NatSet(make_ap(std::move(ap))) {}

NatSet::NatSet(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

NatSet::Kind NatSet::kind() const { return node_->kind; }

const APSet& NatSet::ap() const {
  if (kind() != Kind::AP)
    throw InvalidArgument("not an APSet");
  return node_->ap;
}

int NatSet::power_exponent() const { return node_->exponent; }
const APSet& NatSet::power_base() const { return node_->ap; }
const std::vector<NatSet>& NatSet::children() const { return node_->kids; }
const NatSet& NatSet::frame() const { return node_->kids.at(0); }
const NatSet& NatSet::inner() const { return node_->kids.at(1); }
const std::string& NatSet::key() const { return node_->key; }
const std::optional<APSet>& NatSet::ap_projection() const { return node_->projection; }

NatSet NatSet::power(int p, APSet base) {
  if (p < 1)
    throw InvalidArgument("power exponent must be >= 1");
  if (p == 1)
    return NatSet(std::move(base));
  if (base.is_finite()) {
    std::vector<nat> pts;
    for (nat k : base.elements())
      pts.push_back(ipow_capped(k, p));
    return NatSet(APSet::finite(pts));
  }
  Node n;
  n.kind = Kind::Power;
  n.exponent = p;
  n.key = "P" + std::to_string(p) + "(" + ap_key(base) + ")";
  n.projection = APSet();
  n.ap = std::move(base);
  return NatSetAccess::make(std::move(n));
}

NatSet NatSet::complement() const {
  switch (kind()) {
  case Kind::AP:
    return NatSet(ap().complement());
  case Kind::Not:
    return children()[0];
  case Kind::Pre:
    return preimage(frame(), inner().complement());
  default:
    break;
  }
  Node n;
  n.kind = Kind::Not;
  n.kids = {*this};
  n.key = "N(" + key() + ")";
  if (node_->projection)
    n.projection = node_->projection->complement();
  return NatSetAccess::make(std::move(n));
}

namespace {

NatSet combine(Kind op, const std::vector<NatSet>& input) {
  const bool is_and = op == Kind::And;
  std::vector<NatSet> flat;
  for (const auto& s : input) {
    if (s.kind() == op)
      flat.insert(flat.end(), s.children().begin(), s.children().end());
    else
      flat.push_back(s);
  }
  std::optional<APSet> ap_part;
  std::map<std::string, std::pair<NatSet, std::vector<NatSet>>> pres;
  std::map<std::string, NatSet> others;
  for (const auto& s : flat) {
    if (s.kind() == Kind::AP) {
      ap_part = ap_part ? (is_and ? ap_part->intersect(s.ap()) : ap_part->unite(s.ap())) : s.ap();
    } else if (s.kind() == Kind::Pre) {
      auto& slot = pres.try_emplace(s.frame().key(), s.frame(), std::vector<NatSet>{}).first->second;
      slot.second.push_back(s.inner());
    } else {
      others.emplace(s.key(), s);
    }
  }
  std::vector<NatSet> kids;
  if (ap_part) {
    if (is_and && ap_part->is_empty())
      return NatSet(APSet());
    if (!is_and && ap_part->is_cofinite() && ap_part->includes().empty() &&
        ap_part->excludes().empty())
      return NatSet(APSet::all());
    bool identity = is_and ? (ap_part->is_cofinite() && ap_part->excludes().empty())
                           : ap_part->is_empty();
    if (!identity)
      kids.push_back(NatSet(*ap_part));
  }
  for (auto& [k, slot] : pres) {
    NatSet merged = slot.second.size() == 1 ? slot.second[0] : combine(op, slot.second);
    kids.push_back(NatSet::preimage(slot.first, merged));
  }
  for (auto& [k, s] : others)
    kids.push_back(s);
  if (kids.empty())
    return is_and ? NatSet(APSet::all()) : NatSet(APSet());
  // merged preimages may have collapsed into APs or same-kind formulas
  std::size_t aps = 0;
  bool nested = false;
  for (const auto& k : kids) {
    aps += k.kind() == Kind::AP ? 1 : 0;
    nested = nested || k.kind() == op;
  }
  if (aps > 1 || nested)
    return combine(op, kids);
  if (kids.size() == 1)
    return kids[0];
  std::sort(kids.begin(), kids.end(),
            [](const NatSet& a, const NatSet& b) { return a.key() < b.key(); });
  NatSet::Node n;
  n.kind = op;
  n.key = std::string(is_and ? "I(" : "U(") + join_keys(kids) + ")";
  bool projectable = true;
  for (const auto& k : kids)
    projectable = projectable && k.ap_projection().has_value();
  if (projectable) {
    APSet acc = *kids[0].ap_projection();
    for (std::size_t i = 1; i < kids.size(); ++i)
      acc = is_and ? acc.intersect(*kids[i].ap_projection()) : acc.unite(*kids[i].ap_projection());
    n.projection = acc;
  }
  n.kids = std::move(kids);
  return NatSetAccess::make(std::move(n));
}

bool is_plain(const NatSet& s) {
  if (s.kind() == Kind::Pre)
    return false;
  if (s.kind() == Kind::AP || s.kind() == Kind::Power)
    return true;
  return std::all_of(s.children().begin(), s.children().end(), is_plain);
}

} // namespace

NatSet NatSet::unite(const NatSet& other) const { return combine(Kind::Or, {*this, other}); }
NatSet NatSet::intersect(const NatSet& other) const { return combine(Kind::And, {*this, other}); }
NatSet NatSet::minus(const NatSet& other) const { return intersect(other.complement()); }

NatSet NatSet::unite_all(const std::vector<NatSet>& sets) {
  if (sets.empty())
    return NatSet(APSet());
  return combine(Kind::Or, sets);
}

NatSet NatSet::intersect_all(const std::vector<NatSet>& sets) {
  if (sets.empty())
    return NatSet(APSet::all());
  return combine(Kind::And, sets);
}

NatSet NatSet::preimage(const NatSet& frame, const NatSet& inner) {
  if (frame.kind() == Kind::AP && frame.ap().is_finite())
    throw InvalidArgument("preimage frame must be infinite");
  if (frame.kind() == Kind::AP && frame.ap() == APSet::all())
    return inner;
  if (frame.kind() == Kind::AP) {
    if (inner.kind() == Kind::AP)
      return NatSet(idealconv::preimage(frame.ap(), inner.ap()));
    if (inner.kind() == Kind::Pre && inner.frame().kind() == Kind::AP)
      return preimage(NatSet(reindex(inner.frame().ap(), frame.ap())), inner.inner());
  }
  Node n;
  n.kind = Kind::Pre;
  n.kids = {frame, inner};
  n.key = "R(" + frame.key() + "|" + inner.key() + ")";
  if (frame.kind() == Kind::AP && inner.ap_projection())
    n.projection = idealconv::preimage(frame.ap(), *inner.ap_projection());
  return NatSetAccess::make(std::move(n));
}

bool NatSet::contains(nat n) const {
  if (n < 1)
    return false;
  switch (kind()) {
  case Kind::AP:
    return node_->ap.contains(n);
  case Kind::Power: {
    nat k = iroot(n, node_->exponent);
    return ipow_capped(k, node_->exponent) == n && node_->ap.contains(k);
  }
  case Kind::Not:
    return !children()[0].contains(n);
  case Kind::And:
    return std::all_of(children().begin(), children().end(),
                       [n](const NatSet& k) { return k.contains(n); });
  case Kind::Or:
    return std::any_of(children().begin(), children().end(),
                       [n](const NatSet& k) { return k.contains(n); });
  case Kind::Pre:
    return inner().contains(frame().enumerate(n));
  }
  return false;
}

nat NatSet::count(nat n) const {
  if (n <= 0)
    return 0;
  switch (kind()) {
  case Kind::AP:
    return node_->ap.count(n);
  case Kind::Power:
    return node_->ap.count(iroot(n, node_->exponent));
  case Kind::Pre:
    return inner().intersect(frame()).count(frame().enumerate(n));
  default:
    break;
  }
  if (node_->projection) {
    const APSet& proj = *node_->projection;
    nat c = proj.count(n);
    std::set<nat> pts;
    thin_points(*this, n, pts);
    for (nat m : pts)
      c += static_cast<nat>(contains(m)) - static_cast<nat>(proj.contains(m));
    return c;
  }
  auto bits = bitmap(*this, n);
  return std::count(bits.begin() + 1, bits.end(), 1);
}

std::vector<char> NatSet::indicator(nat n) const { return bitmap(*this, std::max<nat>(n, 0)); }

std::vector<nat> NatSet::counts(const std::vector<nat>& increasing) const {
  std::vector<nat> out;
  const bool direct = kind() == Kind::AP || kind() == Kind::Power || node_->projection;
  if (direct || increasing.size() < 2) {
    for (nat m : increasing)
      out.push_back(count(m));
    return out;
  }
  auto bits = bitmap(*this, increasing.back());
  nat c = 0, at = 0;
  for (nat m : increasing) {
    for (; at < m; ++at)
      c += bits[static_cast<std::size_t>(at + 1)];
    out.push_back(c);
  }
  return out;
}

std::optional<std::vector<nat>> NatSet::finite_elements() const {
  auto& cache = *node_->cache;
  std::call_once(cache.once, [&] { cache.elements = compute_finite_elements(); });
  return cache.elements;
}

std::optional<std::vector<nat>> NatSet::compute_finite_elements() const {
  if (kind() == Kind::AP) {
    if (!ap().is_finite())
      return std::nullopt;
    return ap().elements();
  }
  auto fin = try_finite();
  if (!fin || !*fin)
    return std::nullopt;
  if (is_plain(*this)) {
    // A point that is neither a correction nor a power value is decided by its
    // residue alone, so a finite set can only contain such special points.
    Atoms atoms;
    collect_atoms(*this, atoms);
    const nat bound = plain_finite_bound(*this);
    std::set<nat> candidates;
    for (const auto& a : atoms.aps) {
      candidates.insert(a.includes().begin(), a.includes().end());
      candidates.insert(a.excludes().begin(), a.excludes().end());
    }
    for (const auto& pw : atoms.powers)
      for (nat k = 1, top = iroot(bound, pw.first); k <= top; ++k)
        candidates.insert(ipow_capped(k, pw.first));
    std::vector<nat> out;
    for (nat m : candidates)
      if (m >= 1 && m <= bound && contains(m))
        out.push_back(m);
    return out;
  }
  if (kind() == Kind::Pre) {
    auto inner_elems = inner().intersect(frame()).finite_elements();
    if (!inner_elems)
      return std::nullopt;
    return frame().counts(*inner_elems);
  }
  if (kind() == Kind::And) {
    for (const auto& k : children()) {
      auto e = k.finite_elements();
      if (e) {
        std::vector<nat> out;
        for (nat m : *e)
          if (contains(m))
            out.push_back(m);
        return out;
      }
    }
  }
  if (kind() == Kind::Or) {
    std::set<nat> out;
    for (const auto& k : children()) {
      auto e = k.finite_elements();
      if (!e)
        return std::nullopt;
      out.insert(e->begin(), e->end());
    }
    return std::vector<nat>(out.begin(), out.end());
  }
  return std::nullopt;
}

nat NatSet::enumerate(nat k) const {
  if (k < 1)
    throw InvalidArgument("enumerate index must be >= 1");
  if (kind() == Kind::AP)
    return ap().enumerate(k);
  if (auto elems = finite_elements()) {
    if (k > static_cast<nat>(elems->size()))
      throw FiniteSetExhausted("set has " + std::to_string(elems->size()) +
                               " elements, asked for #" + std::to_string(k));
    return (*elems)[static_cast<std::size_t>(k - 1)];
  }
  // bracket around the projection's answer; the two differ by the thin points only
  nat est = 2 * k;
  if (node_->projection && !node_->projection->is_finite())
    est = node_->projection->enumerate(k);
  nat step = 16;
  nat hi = est;
  while (count(hi) < k) {
    if (hi > (nat{1} << 40))
      throw FiniteSetExhausted("no element #" + std::to_string(k) + " below 2^40");
    hi += step;
    step *= 2;
  }
  nat lo = std::max<nat>(1, est - 16);
  step = 16;
  while (lo > 1 && count(lo - 1) >= k) {
    lo = std::max<nat>(1, lo - step);
    step *= 2;
  }
  while (lo < hi) {
    nat mid = lo + (hi - lo) / 2;
    if (count(mid) >= k)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

std::optional<bool> NatSet::try_finite() const {
  switch (kind()) {
  case Kind::AP:
    return ap().is_finite();
  case Kind::Power:
    return false;
  case Kind::Pre:
    return inner().intersect(frame()).try_finite();
  default:
    break;
  }
  if (is_plain(*this))
    return plain_is_finite(*this);
  if (kind() == Kind::Or) {
    bool all_finite = true;
    for (const auto& k : children()) {
      if (k.kind() == Kind::AP && k.ap().is_finite())
        continue;
      auto f = k.try_finite();
      if (f && !*f)
        return false;
      if (!f)
        all_finite = false;
    }
    if (all_finite)
      return true;
  }
  if (kind() == Kind::And) {
    std::vector<NatSet> rest;
    for (const auto& k : children()) {
      if (k.kind() == Kind::AP && k.ap().is_cofinite())
        continue;
      auto f = k.try_finite();
      if (f && *f)
        return true;
      rest.push_back(k);
    }
    if (rest.size() == 1 && rest.size() != children().size())
      return rest[0].try_finite();
  }
  if (auto d = try_density(); d && *d > 0)
    return false;
  return std::nullopt;
}

bool NatSet::is_finite() const {
  auto f = try_finite();
  if (!f)
    throw Undecidable("finiteness of " + describe());
  return *f;
}

bool NatSet::is_empty() const {
  if (kind() == Kind::AP)
    return ap().is_empty();
  auto elems = finite_elements();
  if (elems)
    return elems->empty();
  auto f = try_finite();
  if (f && !*f)
    return false;
  throw Undecidable("emptiness of " + describe());
}

namespace {

// Replaces every atom of density 0 by ∅ and of density 1 by ω. The result
// differs from the input on a density-zero set only.
std::optional<NatSet> density_reduce(const NatSet& s) {
  switch (s.kind()) {
  case Kind::AP:
    return s;
  case Kind::Power:
    return NatSet(APSet());
  case Kind::Pre: {
    auto d = s.try_density();
    if (!d)
      return std::nullopt;
    if (*d == 0)
      return NatSet(APSet());
    if (*d == 1)
      return NatSet(APSet::all());
    return s;
  }
  case Kind::Not: {
    auto r = density_reduce(s.children()[0]);
    if (!r)
      return std::nullopt;
    return r->complement();
  }
  case Kind::And:
  case Kind::Or: {
    std::vector<NatSet> kids;
    for (const auto& k : s.children()) {
      auto r = density_reduce(k);
      if (!r)
        return std::nullopt;
      kids.push_back(*r);
    }
    return s.kind() == Kind::And ? NatSet::intersect_all(kids) : NatSet::unite_all(kids);
  }
  }
  return std::nullopt;
}

} // namespace

std::optional<Rational> NatSet::try_density() const {
  if (node_->projection)
    return node_->projection->density();
  if (kind() == Kind::Pre) {
    auto df = frame().try_density();
    if (!df || *df == 0)
      return std::nullopt;
    auto dg = inner().intersect(frame()).try_density();
    if (!dg)
      return std::nullopt;
    return *dg / *df;
  }
  auto reduced = density_reduce(*this);
  if (!reduced)
    return std::nullopt;
  if (reduced->ap_projection())
    return reduced->ap_projection()->density();
  if (reduced->kind() == Kind::Pre)
    return reduced->try_density();
  return std::nullopt;
}

Rational NatSet::density() const {
  auto d = try_density();
  if (!d)
    throw Undecidable("density of " + describe());
  return *d;
}

std::string NatSet::describe() const {
  switch (kind()) {
  case Kind::AP:
    return ap().describe();
  case Kind::Power: {
    std::string base = power_base() == APSet::all() ? "" : " : k ∈ " + power_base().describe();
    if (base.empty() && power_exponent() == 2)
      return "squares";
    if (base.empty() && power_exponent() == 3)
      return "cubes";
    return "{k^" + std::to_string(power_exponent()) + base + "}";
  }
  case Kind::Not:
    return "ω∖" + children()[0].describe();
  case Kind::And:
  case Kind::Or: {
    std::string out = "(";
    for (std::size_t i = 0; i < children().size(); ++i)
      out += (i ? (kind() == Kind::And ? " ∩ " : " ∪ ") : "") + children()[i].describe();
    return out + ")";
  }
  case Kind::Pre:
    return "pre[" + frame().describe() + "](" + inner().describe() + ")";
  }
  return "?";
}

} // namespace idealconv
