#include "idealconv/density.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <sstream>

#include "idealconv/errors.hpp"

namespace idealconv {

namespace {

// |S ∩ [1, n]| for many n. Sets without a fast counting function are swept once.
class Counter {
public:
  explicit Counter(const AnySet& s) : set_(s) {
    fast_ = s.is_block() || (s.is_nat() && s.nat_set().ap_projection().has_value());
  }

  nat at(nat n) {
    if (n <= 0)
      return 0;
    if (fast_)
      return set_.count(n);
    auto have = static_cast<nat>(prefix_.size()) - 1;
    if (n > have) {
      prefix_.reserve(static_cast<std::size_t>(n + 1));
      if (prefix_.empty())
        prefix_.push_back(0);
      if (set_.is_nat()) {
        // sweep the formula once, doubling so that repeated growth stays linear
        const nat top = std::max(n, 2 * have);
        auto bits = set_.nat_set().indicator(top);
        for (nat m = have + 1; m <= top; ++m)
          prefix_.push_back(prefix_.back() + static_cast<std::uint32_t>(bits[static_cast<std::size_t>(m)]));
      } else {
        for (nat m = have + 1; m <= n; ++m)
          prefix_.push_back(prefix_.back() + (set_.contains(m) ? 1 : 0));
      }
    }
    return prefix_[static_cast<std::size_t>(n)];
  }

private:
  AnySet set_;
  bool fast_ = false;
  std::vector<std::uint32_t> prefix_;
};

std::vector<nat> tail_of(const std::vector<nat>& cps, double fraction) {
  if (cps.empty())
    throw InvalidArgument("empty checkpoint schedule");
  auto keep = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(cps.size())));
  keep = std::clamp<std::size_t>(keep, 1, cps.size());
  return {cps.end() - static_cast<std::ptrdiff_t>(keep), cps.end()};
}

std::string window_text(const OracleOptions& opts) {
  return std::string(opts.checkpoints == OracleOptions::Checkpoints::Geometric ? "geometric"
                                                                               : "linear") +
         " checkpoints to " + std::to_string(opts.budget);
}

Rational clamp01(const Rational& q) { return std::clamp(q, Rational(0), Rational(1)); }

std::string decimal(const Rational& q) {
  std::ostringstream os;
  os << std::setprecision(6) << to_double(q);
  return os.str();
}

} // namespace

std::string DensityReport::str() const {
  if (exact)
    return to_string(lo) + " (exact)";
  return "[" + decimal(lo) + ", " + decimal(hi) + "] (oracle: " + window + ")";
}

std::vector<nat> make_checkpoints(const OracleOptions& opts) {
  if (opts.budget < 10)
    throw InvalidArgument("oracle budget must be >= 10");
  std::vector<nat> out;
  const nat start = opts.budget / 10;
  if (opts.checkpoints == OracleOptions::Checkpoints::Linear) {
    const nat steps = 400;
    for (nat i = 0; i <= steps; ++i)
      out.push_back(start + (opts.budget - start) * i / steps);
  } else {
    for (double x = static_cast<double>(opts.budget); x >= static_cast<double>(start); x /= 1.005)
      out.push_back(static_cast<nat>(x));
    std::reverse(out.begin(), out.end());
  }
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

DensityReport prefix_oracle(const AnySet& s, const std::vector<nat>& checkpoints,
                            double tail_fraction) {
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end()) || checkpoints.front() < 1)
    throw InvalidArgument("checkpoints must be positive and increasing");
  Counter counter(s);
  auto tail = tail_of(checkpoints, tail_fraction);
  Rational lo = 1, hi = 0;
  for (nat n : tail) {
    Rational r(counter.at(n), n);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  // a constant tail ratio is reported as is
  Rational slack = lo == hi ? Rational(0) : Rational(32, checkpoints.back());
  return {clamp01(lo - slack), clamp01(hi + slack), false,
          std::to_string(tail.size()) + " checkpoints in [" + std::to_string(tail.front()) + ", " +
              std::to_string(tail.back()) + "]"};
}

DensityReport polya_oracle(const AnySet& s, const OracleOptions& opts) {
  Counter counter(s);
  auto tail = tail_of(make_checkpoints(opts), opts.tail_fraction);
  Rational lo = 1, hi = 0;
  const int jmax = 12;
  for (int j = jmax / 2 + 1; j <= jmax; ++j) {
    const nat scale = nat{1} << j; // 1 - s = 2^-j
    Rational best = 0;
    for (nat n : tail) {
      nat from = n - n / scale; // ceil(n s)
      best = std::max(best, Rational((counter.at(n) - counter.at(from - 1)) * scale, n));
    }
    lo = std::min(lo, best);
    hi = std::max(hi, best);
  }
  // one element of discretization error in the narrowest window
  Rational slack(nat{1} << jmax, tail.front());
  return {clamp01(lo - slack), clamp01(hi + slack), false,
          "s = 1 - 2^-j, j = 7..12; " + window_text(opts)};
}

DensityReport weighted_oracle(const AnySet& s, const Rational& alpha, const OracleOptions& opts) {
  if (alpha < -1)
    throw InvalidAlpha("alpha must be >= -1, got " + to_string(alpha));
  const double a = to_double(alpha);
  auto cps = make_checkpoints(opts);
  auto tail = tail_of(cps, opts.tail_fraction);
  double lo = 1, hi = 0, all = 0, in = 0;
  std::size_t next = 0;
  std::vector<char> bits;
  if (s.is_nat())
    bits = s.nat_set().indicator(cps.back());
  for (nat k = 1; k <= cps.back(); ++k) {
    double w = std::pow(static_cast<double>(k), a);
    all += w;
    if (bits.empty() ? s.contains(k) : bits[static_cast<std::size_t>(k)] != 0)
      in += w;
    if (next < tail.size() && k == tail[next]) {
      lo = std::min(lo, in / all);
      hi = std::max(hi, in / all);
      ++next;
    }
  }
  return {clamp01(Rational(lo)), clamp01(Rational(hi)), false,
          "alpha = " + to_string(alpha) + "; " + window_text(opts)};
}

DensityReport upper_density(const AnySet& s, const OracleOptions& opts) {
  if (s.is_block())
    return DensityReport::exact_value(s.block_set().upper_density());
  if (s.is_nat())
    if (auto d = s.nat_set().try_density())
      return DensityReport::exact_value(*d);
  auto r = prefix_oracle(s, make_checkpoints(opts), opts.tail_fraction);
  r.window = window_text(opts);
  return r;
}

DensityReport lower_density(const AnySet& s, const OracleOptions& opts) {
  if (s.is_block())
    return DensityReport::exact_value(s.block_set().lower_density());
  if (s.is_nat())
    if (auto d = s.nat_set().try_density())
      return DensityReport::exact_value(*d);
  auto r = prefix_oracle(s, make_checkpoints(opts), opts.tail_fraction);
  r.window = window_text(opts);
  return r;
}

DensityReport weighted_upper_density(const AnySet& s, const Rational& alpha,
                                     const OracleOptions& opts) {
  if (alpha < -1)
    throw InvalidAlpha("alpha must be >= -1, got " + to_string(alpha));
  if (s.is_block())
    if (auto d = s.block_set().weighted_upper_density(alpha))
      return DensityReport::exact_value(*d);
  if (s.is_nat())
    if (auto d = s.nat_set().try_density())
      return DensityReport::exact_value(*d);
  if (alpha == 0)
    return upper_density(s, opts);
  return weighted_oracle(s, alpha, opts);
}

DensityReport polya_upper(const AnySet& s, const OracleOptions& opts) {
  if (s.is_block())
    return DensityReport::exact_value(s.block_set().polya_upper());
  if (s.is_nat())
    if (auto d = s.nat_set().try_density())
      return DensityReport::exact_value(*d);
  return polya_oracle(s, opts);
}

Rational mu(const PairSet& a, nat n, nat m) {
  if (n < 1 || m < 1)
    throw InvalidArgument("mu needs n, m >= 1");
  return Rational(a.count(n, m)) / (BigInt(n) * m);
}

} // namespace idealconv
