#include <algorithm>

#include "idealconv/errors.hpp"
#include "idealconv/sequences.hpp"

namespace idealconv {

namespace {

Rational rpow(Rational b, nat e) {
  Rational r = 1;
  while (e > 0) {
    if (e & 1)
      r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

bool same_sets(const std::vector<NatSet>& a, const std::vector<NatSet>& b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin());
}

bool same_index(const Component& a, const Component& b) {
  return a.anchor.has_value() == b.anchor.has_value() && (!a.anchor || *a.anchor == *b.anchor) &&
         same_sets(a.frames, b.frames);
}

nat chase(nat n, const std::vector<NatSet>& frames) {
  for (auto it = frames.rbegin(); it != frames.rend(); ++it)
    n = it->enumerate(n);
  return n;
}

} // namespace

bool Component::like(const Component& o) const {
  return kind == o.kind && (kind != Kind::Geometric || rho == o.rho) && same_index(*this, o);
}

Term Term::constant(Rational q) {
  Term t;
  t.q_ = std::move(q);
  return t;
}

Term Term::harmonic(Rational q, Rational c) {
  Term t = constant(std::move(q));
  t.parts_.push_back({Component::Kind::Harmonic, std::move(c), 0, std::nullopt, {}});
  t.normalize();
  return t;
}

Term Term::geometric(Rational q, Rational c, Rational rho) {
  if (abs(rho) >= 1)
    throw InvalidArgument("geometric ratio must satisfy |rho| < 1, got " + to_string(rho));
  Term t = constant(std::move(q));
  t.parts_.push_back({Component::Kind::Geometric, std::move(c), std::move(rho), std::nullopt, {}});
  t.normalize();
  return t;
}

Term Term::unbounded(Rational c) {
  Term t;
  t.parts_.push_back({Component::Kind::Linear, std::move(c), 0, std::nullopt, {}});
  t.normalize();
  return t;
}

void Term::normalize() {
  std::vector<Component> out;
  for (auto& p : parts_) {
    if (p.kind == Component::Kind::Geometric && p.rho == 0)
      continue;
    auto it = std::find_if(out.begin(), out.end(), [&](const Component& o) { return o.like(p); });
    if (it == out.end())
      out.push_back(std::move(p));
    else
      it->c += p.c;
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const Component& p) { return p.c == 0; }),
            out.end());
  parts_ = std::move(out);
}

bool Term::is_unbounded() const {
  int sign = 0;
  for (const auto& p : parts_) {
    if (p.kind != Component::Kind::Linear)
      continue;
    int s = p.c > 0 ? 1 : -1;
    if (sign != 0 && s != sign)
      throw Undecidable("linear parts of opposite sign along different frames in " + describe());
    sign = s;
  }
  return sign != 0;
}

std::optional<Rational> Term::limit() const {
  if (is_unbounded())
    return std::nullopt;
  return q_;
}

Rational Term::value(nat n, const NatSet& support, std::optional<nat> pos) const {
  Rational v = q_;
  for (const auto& p : parts_) {
    nat m = chase(n, p.frames);
    if (p.kind == Component::Kind::Linear) {
      v += p.c * m;
      continue;
    }
    nat k = p.anchor ? p.anchor->count(m) : pos ? *pos : support.count(n);
    if (k < 1)
      throw InvalidArgument("index " + std::to_string(n) + " outside the anchor of " + describe());
    v += p.kind == Component::Kind::Harmonic ? p.c / k : p.c * rpow(p.rho, k);
  }
  return v;
}

nat Term::settle_position(const Rational& delta) const {
  if (delta <= 0)
    throw InvalidArgument("settle_position needs a positive margin");
  Rational h = 0;
  std::vector<const Component*> geo;
  for (const auto& p : parts_) {
    if (p.kind == Component::Kind::Harmonic)
      h += abs(p.c);
    else if (p.kind == Component::Kind::Geometric)
      geo.push_back(&p);
  }
  // each family gets half the margin
  nat k_h = static_cast<nat>(floor(2 * h / delta)) + 1;
  nat k_g = 1;
  if (!geo.empty()) {
    for (;; ++k_g) {
      Rational s = 0;
      for (const auto* p : geo)
        s += abs(p->c) * rpow(abs(p->rho), k_g);
      if (2 * s < delta)
        break;
    }
  }
  return std::max(k_h, k_g);
}

Term Term::anchored(const NatSet& support) const {
  Term t = *this;
  for (auto& p : t.parts_)
    if (p.kind != Component::Kind::Linear && !p.anchor)
      p.anchor = support;
  return t;
}

Term Term::along(const NatSet& frame) const {
  Term t = *this;
  for (auto& p : t.parts_) {
    if (p.kind != Component::Kind::Linear && !p.anchor)
      throw InvalidArgument("anchor the term before reading it along a frame");
    p.frames.push_back(frame);
  }
  return t;
}

Term Term::operator-() const {
  Term t = *this;
  t.q_ = -t.q_;
  for (auto& p : t.parts_)
    p.c = -p.c;
  return t;
}

Term operator+(const Term& a, const Term& b) {
  Term t = a;
  t.q_ += b.q_;
  t.parts_.insert(t.parts_.end(), b.parts_.begin(), b.parts_.end());
  t.normalize();
  return t;
}

Term Term::shifted(const Rational& d) const {
  Term t = *this;
  t.q_ += d;
  return t;
}

bool Term::eventually_nonzero() const {
  if (is_zero())
    return false;
  if (is_unbounded())
    return true;
  if (q_ != 0)
    return true;
  // q = 0 and only decaying parts: the dominant one decides, if it is unique
  for (const auto& p : parts_)
    if (!same_index(p, parts_.front()))
      throw Undecidable("decaying parts along different indices in " + describe());
  for (const auto& p : parts_)
    if (p.kind == Component::Kind::Harmonic)
      return true;
  Rational top = 0;
  for (const auto& p : parts_)
    top = std::max(top, abs(p.rho));
  std::vector<const Component*> lead;
  for (const auto& p : parts_)
    if (abs(p.rho) == top)
      lead.push_back(&p);
  if (lead.size() == 1 || abs(lead[0]->c) != abs(lead[1]->c))
    return true;
  throw Undecidable("leading geometric parts may cancel in " + describe());
}

std::string Term::describe() const {
  std::string out;
  auto add = [&out](const std::string& s) {
    if (out.empty())
      out = s;
    else if (s[0] == '-')
      out += " - " + s.substr(1);
    else
      out += " + " + s;
  };
  if (q_ != 0 || parts_.empty())
    add(to_string(q_));
  for (const auto& p : parts_) {
    std::string idx = p.frames.empty() ? "n" : "m";
    switch (p.kind) {
    case Component::Kind::Linear:
      add(p.c == 1 ? idx : p.c == -1 ? "-" + idx : to_string(p.c) + "·" + idx);
      break;
    case Component::Kind::Harmonic:
      add(to_string(p.c) + "/k");
      break;
    case Component::Kind::Geometric:
      add(to_string(p.c) + "·(" + to_string(p.rho) + ")^k");
      break;
    }
  }
  return out;
}

} // namespace idealconv
