#pragma once

#include <string>
#include <vector>

#include "idealconv/sets.hpp"

namespace idealconv {

struct DensityReport {
  Rational lo = 0;
  Rational hi = 0;
  bool exact = true;
  std::string window; // empty for exact values

  static DensityReport exact_value(Rational v) { return {v, v, true, ""}; }

  const Rational& value() const { return lo; }
  bool contains(const Rational& v) const { return lo <= v && v <= hi; }
  /// "1/2 (exact)" or "[0.33, 0.34] (oracle: ...)".
  std::string str() const;
};

struct OracleOptions {
  enum class Checkpoints { Geometric, Linear };
  nat budget = 1000000;
  Checkpoints checkpoints = Checkpoints::Geometric;
  double tail_fraction = 0.5;
};

/// Checkpoints in [budget/10, budget], increasing, ending at budget.
std::vector<nat> make_checkpoints(const OracleOptions& opts);

DensityReport upper_density(const AnySet& s, const OracleOptions& opts = {});
DensityReport lower_density(const AnySet& s, const OracleOptions& opts = {});

/// limsup of sum_{k in S, k <= n} k^α / sum_{k <= n} k^α. Throws InvalidAlpha for α < -1.
DensityReport weighted_upper_density(const AnySet& s, const Rational& alpha,
                                     const OracleOptions& opts = {});

/// Pólya upper density.
DensityReport polya_upper(const AnySet& s, const OracleOptions& opts = {});

/// |A ∩ [1,n]×[1,m]| / (n m)
Rational mu(const PairSet& a, nat n, nat m);

/// [min, max] of |S ∩ [1,n]| / n over the tail of the checkpoint list, widened
/// by 32 / (last checkpoint) to absorb the O(1/n) discretization error when
/// the ratio varies over the tail.
DensityReport prefix_oracle(const AnySet& s, const std::vector<nat>& checkpoints,
                            double tail_fraction = 0.5);

/// Oracle for the Pólya density over s_j = 1 - 2^-j, j = 1..12.
DensityReport polya_oracle(const AnySet& s, const OracleOptions& opts = {});

/// Oracle for the α-weighted upper density.
DensityReport weighted_oracle(const AnySet& s, const Rational& alpha, const OracleOptions& opts = {});

} // namespace idealconv
