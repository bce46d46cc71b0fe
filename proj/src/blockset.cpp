#include <algorithm>

#include "idealconv/errors.hpp"
#include "idealconv/sets.hpp"

namespace idealconv {

Schedule Schedule::geometric(nat b0, nat ratio) {
  if (b0 < 1 || ratio < 2)
    throw InvalidArgument("geometric schedule needs b0 >= 1 and ratio >= 2");
  Schedule s;
  s.kind = Kind::Geometric;
  s.b0 = b0;
  s.ratio = ratio;
  return s;
}

Schedule Schedule::polynomial(int degree) {
  if (degree < 1)
    throw InvalidArgument("polynomial schedule needs degree >= 1");
  Schedule s;
  s.kind = Kind::Polynomial;
  s.b0 = 0;
  s.ratio = 0;
  s.degree = degree;
  return s;
}

nat Schedule::boundary(nat k) const {
  if (kind == Kind::Polynomial)
    return ipow_capped(k, degree);
  nat b = b0;
  for (nat i = 0; i < k; ++i) {
    if (b > (nat{1} << 62) / ratio)
      return -1;
    b *= ratio;
  }
  return b;
}

nat Schedule::block_of(nat n) const {
  if (kind == Kind::Polynomial)
    return iroot(n, degree);
  if (n < b0)
    return -1;
  nat k = 0;
  nat b = b0;
  while (b <= n / ratio) {
    b *= ratio;
    ++k;
  }
  return k;
}

BlockSet::BlockSet(Schedule schedule, APSet selector, bool low)
    : schedule_(schedule), selector_(std::move(selector)),
      low_(low && schedule.kind == Schedule::Kind::Geometric && schedule.b0 > 1) {}

bool BlockSet::selects(nat block) const {
  return block >= 1 ? selector_.contains(block) : selector_.periodic_contains(0);
}

bool BlockSet::contains(nat n) const {
  if (n < 1)
    return false;
  nat k = schedule_.block_of(n);
  return k < 0 ? low_ : selects(k);
}

nat BlockSet::count(nat n) const {
  if (n < 1)
    return 0;
  nat c = 0;
  if (low_)
    c += std::min(n, schedule_.b0 - 1);
  nat last = schedule_.block_of(n);
  for (nat k = 0; k <= last; ++k) {
    if (!selects(k))
      continue;
    nat lo = std::max<nat>(schedule_.boundary(k), 1);
    nat next = schedule_.boundary(k + 1);
    nat hi = next < 0 ? n : std::min(n, next - 1);
    if (hi >= lo)
      c += hi - lo + 1;
  }
  return c;
}

nat BlockSet::enumerate(nat k) const {
  if (k < 1)
    throw InvalidArgument("enumerate index must be >= 1");
  nat hi = std::max<nat>(2 * k, 16);
  while (count(hi) < k) {
    if (is_finite() || hi > (nat{1} << 40))
      throw FiniteSetExhausted("block set has no element #" + std::to_string(k));
    hi *= 2;
  }
  nat lo = 1;
  while (lo < hi) {
    nat mid = lo + (hi - lo) / 2;
    if (count(mid) >= k)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

bool BlockSet::is_finite() const { return selector_.is_finite(); }

BlockSet BlockSet::complement() const {
  bool below = schedule_.kind == Schedule::Kind::Geometric && schedule_.b0 > 1;
  return BlockSet(schedule_, selector_.complement(), below && !low_);
}

BlockSet BlockSet::unite(const BlockSet& other) const {
  if (!(schedule_ == other.schedule_))
    throw InvalidArgument("block sets with different schedules");
  return BlockSet(schedule_, selector_.unite(other.selector_), low_ || other.low_);
}

BlockSet BlockSet::intersect(const BlockSet& other) const {
  if (!(schedule_ == other.schedule_))
    throw InvalidArgument("block sets with different schedules");
  return BlockSet(schedule_, selector_.intersect(other.selector_), low_ && other.low_);
}

// Ratio count(b_{c+1}) / b_{c+1} in the limit along blocks c ≡ c (mod M):
// (r - 1) / (1 - r^-M) * sum_{m=1..M} [c + 1 - m selected] r^-m.
Rational BlockSet::geometric_ratio(nat c) const {
  const nat M = selector_.modulus();
  const Rational r(schedule_.ratio);
  Rational sum = 0;
  Rational w = 1;
  Rational rM = 1;
  for (nat m = 1; m <= M; ++m) {
    w /= r;
    rM *= r;
    nat idx = ((c + 1 - m) % M + M) % M;
    if (selector_.periodic_contains(idx))
      sum += w;
  }
  return (r - 1) / (1 - 1 / rM) * sum;
}

Rational BlockSet::upper_density() const {
  if (schedule_.kind == Schedule::Kind::Polynomial)
    return selector_.density();
  Rational best = 0;
  for (nat c = 0; c < selector_.modulus(); ++c)
    best = std::max(best, geometric_ratio(c));
  return best;
}

Rational BlockSet::lower_density() const {
  if (schedule_.kind == Schedule::Kind::Polynomial)
    return selector_.density();
  Rational best = 1;
  for (nat c = 0; c < selector_.modulus(); ++c)
    best = std::min(best, geometric_ratio(c));
  return best;
}

Rational BlockSet::polya_upper() const {
  if (schedule_.kind == Schedule::Kind::Polynomial)
    return selector_.density();
  // for s close to 1 a window [ns, n] fits inside a single selected block
  return selector_.residues().empty() ? Rational(0) : Rational(1);
}

std::optional<Rational> BlockSet::weighted_upper_density(const Rational& alpha) const {
  if (alpha < -1)
    throw InvalidAlpha("alpha must be >= -1, got " + to_string(alpha));
  if (schedule_.kind == Schedule::Kind::Polynomial || alpha == -1)
    return selector_.density();
  if (alpha == 0)
    return upper_density();
  return std::nullopt;
}

std::string BlockSet::describe() const {
  std::string sched = schedule_.kind == Schedule::Kind::Geometric
                          ? "geom(b0=" + std::to_string(schedule_.b0) +
                                ",r=" + std::to_string(schedule_.ratio) + ")"
                          : "poly(p=" + std::to_string(schedule_.degree) + ")";
  return "blocks[" + sched + "](" + selector_.describe() + ")" + (low_ ? "+low" : "");
}

} // namespace idealconv
