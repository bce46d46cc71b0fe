#pragma once

#include <string>
#include <utility>
#include <vector>

#include "idealconv/rational.hpp"

namespace idealconv {

/// A subset of ω that is periodic up to finitely many corrections:
///
///   S = ({n : n mod M in residues} ∪ includes) \ excludes
///
/// Values are kept in canonical form (least period, corrections trimmed), so
/// two APSets denote the same set iff they compare equal.
class APSet {
public:
  /// The empty set.
  APSet();

  APSet(nat modulus, std::vector<nat> residues, std::vector<nat> includes = {},
        std::vector<nat> excludes = {});

  static APSet all();
  static APSet empty() { return APSet(); }
  /// {n >= 1 : n ≡ r (mod m)}
  static APSet residue(nat r, nat m);
  static APSet finite(std::vector<nat> elements);
  static APSet evens() { return residue(0, 2); }
  static APSet odds() { return residue(1, 2); }
  /// {n : n >= from}
  static APSet tail(nat from);
  /// {1, ..., n}
  static APSet prefix(nat n);

  nat modulus() const { return modulus_; }
  const std::vector<nat>& residues() const { return residues_; }
  const std::vector<nat>& includes() const { return includes_; }
  const std::vector<nat>& excludes() const { return excludes_; }

  bool contains(nat n) const;
  /// Membership of the periodic part only.
  bool periodic_contains(nat n) const;
  /// |S ∩ [1, n]|
  nat count(nat n) const;
  /// k-th smallest element (1-based). Throws FiniteSetExhausted.
  nat enumerate(nat k) const;

  bool is_finite() const { return residues_.empty(); }
  bool is_cofinite() const { return static_cast<nat>(residues_.size()) == modulus_; }
  bool is_empty() const { return residues_.empty() && includes_.empty(); }
  /// Number of elements of a finite set.
  nat size() const;
  /// Largest correction point, 0 when none.
  nat max_correction() const;
  /// |residues| / M, the asymptotic density.
  Rational density() const;

  APSet complement() const;
  APSet unite(const APSet& other) const;
  APSet intersect(const APSet& other) const;
  APSet minus(const APSet& other) const;
  bool subset_of(const APSet& other) const { return minus(other).is_empty(); }

  /// Elements of a finite set in increasing order.
  std::vector<nat> elements() const;

  /// Human readable, e.g. "AP(0 mod 2)" or "AP(1,2 mod 4)+{3}-{5}".
  std::string describe() const;

  friend bool operator==(const APSet&, const APSet&) = default;

private:
  void canonicalize();

  nat modulus_ = 1;
  std::vector<nat> residues_;
  std::vector<nat> includes_;
  std::vector<nat> excludes_;
};

/// {a_b : b in B} where (a_n) is the increasing enumeration of A.
APSet reindex(const APSet& a, const APSet& b);

/// {k : a_k in target} where (a_n) is the increasing enumeration of frame.
APSet preimage(const APSet& frame, const APSet& target);

/// Cantor anti-diagonal bijection ω -> ω×ω, 1-based: 1 -> (1,1), 2 -> (1,2), 3 -> (2,1), ...
std::pair<nat, nat> pairing(nat n);
nat unpairing(nat i, nat j);

} // namespace idealconv
