#include "idealconv/apset.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "idealconv/errors.hpp"

namespace idealconv {

namespace {

nat mod_floor(nat n, nat m) {
  nat r = n % m;
  return r < 0 ? r + m : r;
}

void sort_unique(std::vector<nat>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Residues of a periodic set listed as the offsets 1..M, increasing. Residue 0
// becomes M so that elements of the block (T, T+M] come out in order.
std::vector<nat> ordered_offsets(const APSet& s) {
  std::vector<nat> out;
  for (nat r : s.residues())
    out.push_back(r == 0 ? s.modulus() : r);
  std::sort(out.begin(), out.end());
  return out;
}

// Enumeration of an infinite APSet in closed form beyond a threshold:
// for k > head_count, a_k = base + M * ((k - head_count - 1) / r) + offsets[(k - head_count - 1) % r].
struct AffineTracks {
  nat base = 0;
  nat head_count = 0;
  nat modulus = 1;
  std::vector<nat> offsets;

  explicit AffineTracks(const APSet& s) {
    modulus = s.modulus();
    nat t = s.max_correction();
    base = (t / modulus + 1) * modulus;
    head_count = s.count(base);
    offsets = ordered_offsets(s);
  }

  nat rank() const { return static_cast<nat>(offsets.size()); }

  nat at(nat k) const {
    nat j = k - head_count - 1;
    nat r = rank();
    return base + modulus * (j / r) + offsets[static_cast<std::size_t>(j % r)];
  }
};

} // namespace

APSet::APSet() = default;

APSet::APSet(nat modulus, std::vector<nat> residues, std::vector<nat> includes,
             std::vector<nat> excludes)
    : modulus_(modulus), residues_(std::move(residues)), includes_(std::move(includes)),
      excludes_(std::move(excludes)) {
  if (modulus_ < 1)
    throw InvalidArgument("APSet modulus must be positive");
  for (auto& r : residues_)
    r = mod_floor(r, modulus_);
  canonicalize();
}

APSet APSet::all() { return APSet(1, {0}); }

APSet APSet::residue(nat r, nat m) { return APSet(m, {r}); }

APSet APSet::finite(std::vector<nat> elements) { return APSet(1, {}, std::move(elements)); }

APSet APSet::tail(nat from) {
  std::vector<nat> exc;
  for (nat i = 1; i < from; ++i)
    exc.push_back(i);
  return APSet(1, {0}, {}, exc);
}

APSet APSet::prefix(nat n) {
  std::vector<nat> inc;
  for (nat i = 1; i <= n; ++i)
    inc.push_back(i);
  return finite(inc);
}

void APSet::canonicalize() {
  sort_unique(residues_);
  std::vector<char> in(static_cast<std::size_t>(modulus_), 0);
  for (nat r : residues_)
    in[static_cast<std::size_t>(r)] = 1;

  // least period dividing the modulus
  for (nat d = 1; d <= modulus_; ++d) {
    if (modulus_ % d != 0)
      continue;
    bool periodic = true;
    for (nat r = 0; r < modulus_ && periodic; ++r)
      periodic = in[static_cast<std::size_t>(r)] == in[static_cast<std::size_t>(r % d)];
    if (periodic) {
      std::vector<nat> reduced;
      for (nat r = 0; r < d; ++r)
        if (in[static_cast<std::size_t>(r)])
          reduced.push_back(r);
      modulus_ = d;
      residues_ = std::move(reduced);
      break;
    }
  }

  std::vector<nat> inc, exc;
  for (nat n : includes_)
    if (n >= 1 && !periodic_contains(n))
      inc.push_back(n);
  for (nat n : excludes_)
    if (n >= 1 && periodic_contains(n))
      exc.push_back(n);
  sort_unique(inc);
  sort_unique(exc);
  // a point both included and excluded is excluded
  std::vector<nat> inc2;
  std::set_difference(inc.begin(), inc.end(), exc.begin(), exc.end(), std::back_inserter(inc2));
  includes_ = std::move(inc2);
  excludes_ = std::move(exc);
}

bool APSet::periodic_contains(nat n) const {
  nat r = mod_floor(n, modulus_);
  return std::binary_search(residues_.begin(), residues_.end(), r);
}

bool APSet::contains(nat n) const {
  if (n < 1)
    return false;
  if (std::binary_search(includes_.begin(), includes_.end(), n))
    return true;
  if (std::binary_search(excludes_.begin(), excludes_.end(), n))
    return false;
  return periodic_contains(n);
}

nat APSet::count(nat n) const {
  if (n <= 0)
    return 0;
  nat full = n / modulus_;
  nat rem = n % modulus_;
  nat c = full * static_cast<nat>(residues_.size());
  for (nat r : residues_)
    if (r >= 1 && r <= rem)
      ++c;
  c += std::upper_bound(includes_.begin(), includes_.end(), n) - includes_.begin();
  c -= std::upper_bound(excludes_.begin(), excludes_.end(), n) - excludes_.begin();
  return c;
}

nat APSet::size() const {
  if (!is_finite())
    throw InvalidArgument("size() of an infinite APSet");
  return static_cast<nat>(includes_.size());
}

nat APSet::max_correction() const {
  nat m = 0;
  if (!includes_.empty())
    m = std::max(m, includes_.back());
  if (!excludes_.empty())
    m = std::max(m, excludes_.back());
  return m;
}

nat APSet::enumerate(nat k) const {
  if (k < 1)
    throw InvalidArgument("enumerate index must be >= 1");
  if (is_finite()) {
    if (k > size())
      throw FiniteSetExhausted("set has " + std::to_string(size()) + " elements, asked for #" +
                               std::to_string(k));
    return includes_[static_cast<std::size_t>(k - 1)];
  }
  nat r = static_cast<nat>(residues_.size());
  nat lo = 1;
  nat hi = max_correction() + (k / r + 2) * modulus_ + modulus_;
  while (count(hi) < k)
    hi *= 2;
  while (lo < hi) {
    nat mid = lo + (hi - lo) / 2;
    if (count(mid) >= k)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

Rational APSet::density() const {
  return Rational(static_cast<nat>(residues_.size())) / modulus_;
}

APSet APSet::complement() const {
  std::vector<nat> res;
  for (nat r = 0; r < modulus_; ++r)
    if (!std::binary_search(residues_.begin(), residues_.end(), r))
      res.push_back(r);
  return APSet(modulus_, res, excludes_, includes_);
}

namespace {

template <class Op>
APSet combine(const APSet& a, const APSet& b, Op op) {
  nat m = lcm64(a.modulus(), b.modulus());
  std::vector<nat> res;
  for (nat r = 0; r < m; ++r)
    if (op(a.periodic_contains(r), b.periodic_contains(r)))
      res.push_back(r);
  APSet periodic(m, res);
  std::vector<nat> points;
  for (const auto* s : {&a, &b}) {
    points.insert(points.end(), s->includes().begin(), s->includes().end());
    points.insert(points.end(), s->excludes().begin(), s->excludes().end());
  }
  std::vector<nat> inc, exc;
  for (nat p : points) {
    bool actual = op(a.contains(p), b.contains(p));
    bool base = periodic.periodic_contains(p);
    if (actual && !base)
      inc.push_back(p);
    if (!actual && base)
      exc.push_back(p);
  }
  return APSet(m, res, inc, exc);
}

} // namespace

APSet APSet::unite(const APSet& other) const {
  return combine(*this, other, [](bool x, bool y) { return x || y; });
}

APSet APSet::intersect(const APSet& other) const {
  return combine(*this, other, [](bool x, bool y) { return x && y; });
}

APSet APSet::minus(const APSet& other) const {
  return combine(*this, other, [](bool x, bool y) { return x && !y; });
}

std::vector<nat> APSet::elements() const {
  if (!is_finite())
    throw InvalidArgument("elements() of an infinite APSet");
  return includes_;
}

std::string APSet::describe() const {
  std::ostringstream os;
  auto list = [&os](const std::vector<nat>& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
      os << (i ? "," : "") << v[i];
  };
  if (residues_.empty()) {
    os << "{";
    list(includes_);
    os << "}";
    return os.str();
  }
  if (is_cofinite())
    os << "ω";
  else {
    os << "AP(";
    list(residues_);
    os << " mod " << modulus_ << ")";
  }
  if (!includes_.empty()) {
    os << "+{";
    list(includes_);
    os << "}";
  }
  if (!excludes_.empty()) {
    os << "-{";
    list(excludes_);
    os << "}";
  }
  return os.str();
}

APSet reindex(const APSet& a, const APSet& b) {
  if (a.is_finite())
    throw InvalidArgument("reindex requires an infinite outer set");
  if (b.is_finite()) {
    std::vector<nat> out;
    for (nat k : b.elements())
      out.push_back(a.enumerate(k));
    return APSet::finite(out);
  }
  AffineTracks tracks(a);
  nat r = tracks.rank();
  nat period = lcm64(r, b.modulus());
  nat new_mod = period / r * a.modulus();
  nat start = std::max(tracks.head_count, b.max_correction()) + 1;
  std::vector<nat> res;
  for (nat k = start; k < start + period; ++k)
    if (b.periodic_contains(k))
      res.push_back(tracks.at(k) % new_mod);
  nat boundary = tracks.at(start);
  std::set<nat> head;
  for (nat k = 1; k < start; ++k)
    if (b.contains(k))
      head.insert(a.enumerate(k));
  APSet periodic(new_mod, res);
  std::vector<nat> inc, exc;
  for (nat n = 1; n < boundary; ++n) {
    bool actual = head.count(n) > 0;
    bool base = periodic.periodic_contains(n);
    if (actual && !base)
      inc.push_back(n);
    if (!actual && base)
      exc.push_back(n);
  }
  return APSet(new_mod, res, inc, exc);
}

APSet preimage(const APSet& frame, const APSet& target) {
  if (frame.is_finite())
    throw InvalidArgument("preimage requires an infinite frame");
  AffineTracks tracks(frame);
  nat r = tracks.rank();
  nat period = r * target.modulus();
  nat start = std::max(tracks.head_count, frame.count(target.max_correction())) + 1;
  std::vector<nat> res;
  for (nat k = start; k < start + period; ++k)
    if (target.periodic_contains(tracks.at(k)))
      res.push_back(k % period);
  APSet periodic(period, res);
  std::vector<nat> inc, exc;
  for (nat k = 1; k < start; ++k) {
    bool actual = target.contains(frame.enumerate(k));
    bool base = periodic.periodic_contains(k);
    if (actual && !base)
      inc.push_back(k);
    if (!actual && base)
      exc.push_back(k);
  }
  return APSet(period, res, inc, exc);
}

std::pair<nat, nat> pairing(nat n) {
  if (n < 1)
    throw InvalidArgument("pairing index must be >= 1");
  // diagonal d holds the cells with i + j = d + 1
  nat d = (iroot(8 * n + 1, 2) - 1) / 2;
  while (d * (d + 1) / 2 < n)
    ++d;
  nat i = n - (d - 1) * d / 2;
  return {i, d + 1 - i};
}

nat unpairing(nat i, nat j) {
  if (i < 1 || j < 1)
    throw InvalidArgument("unpairing coordinates must be >= 1");
  nat d = i + j - 1;
  return (d - 1) * d / 2 + i;
}

} // namespace idealconv
