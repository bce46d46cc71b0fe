#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "idealconv/apset.hpp"
#include "idealconv/rational.hpp"

namespace idealconv {

/// Exact subset of ω built from three kinds of atoms:
///
///   - APSet                       eventually periodic sets
///   - power(p, T) = {k^p : k ∈ T}  sparse sets (squares, cubes, ...), p >= 2
///   - preimage(F, G) = {k : f_k ∈ G}, (f_k) the enumeration of an infinite F
///
/// closed under complement, finite unions and finite intersections.
/// Every set of the class has a natural density, and the sparse atoms are
/// summable (∑ 1/n < ∞), which is what makes ideal membership decidable.
///
/// Values are immutable and cheap to copy.
class NatSet {
public:
  enum class Kind { AP, Power, Not, And, Or, Pre };

  NatSet();
  NatSet(APSet ap); // NOLINT(google-explicit-constructor)

  static NatSet power(int p, APSet base);
  static NatSet squares() { return power(2, APSet::all()); }
  static NatSet cubes() { return power(3, APSet::all()); }
  /// {k : f_k ∈ inner}; frame must be infinite.
  static NatSet preimage(const NatSet& frame, const NatSet& inner);

  Kind kind() const;
  bool is_ap() const { return kind() == Kind::AP; }
  const APSet& ap() const;
  int power_exponent() const;
  const APSet& power_base() const;
  const std::vector<NatSet>& children() const;
  const NatSet& frame() const;
  const NatSet& inner() const;

  bool contains(nat n) const;
  /// |S ∩ [1, n]|
  nat count(nat n) const;
  /// Membership of 1..n in one sweep; index 0 is unused.
  std::vector<char> indicator(nat n) const;
  /// count at each of the increasing points, sharing one scan when needed.
  std::vector<nat> counts(const std::vector<nat>& increasing) const;
  /// k-th smallest element. Throws FiniteSetExhausted.
  nat enumerate(nat k) const;

  /// Throws Undecidable when the structure is outside the decidable fragment.
  bool is_finite() const;
  std::optional<bool> try_finite() const;
  bool is_empty() const;
  /// All elements, when the set is decidably finite.
  std::optional<std::vector<nat>> finite_elements() const;
  /// Projection that drops the sparse atoms; present when every preimage
  /// frame inside is an APSet. Differs from the set on a summable set only.
  const std::optional<APSet>& ap_projection() const;

  /// Exact natural density; throws Undecidable when no rule applies.
  Rational density() const;
  std::optional<Rational> try_density() const;

  NatSet complement() const;
  NatSet unite(const NatSet& other) const;
  NatSet intersect(const NatSet& other) const;
  NatSet minus(const NatSet& other) const;

  static NatSet unite_all(const std::vector<NatSet>& sets);
  static NatSet intersect_all(const std::vector<NatSet>& sets);

  /// Canonical structural key; equal keys denote equal sets.
  const std::string& key() const;
  std::string describe() const;

  friend bool operator==(const NatSet& a, const NatSet& b) { return a.key() == b.key(); }

  struct Node;

private:
  explicit NatSet(std::shared_ptr<const Node> node);
  std::optional<std::vector<nat>> compute_finite_elements() const;
  std::shared_ptr<const Node> node_;

  friend struct NatSetAccess;
};

} // namespace idealconv
