#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "idealconv/apset.hpp"
#include "idealconv/natset.hpp"

namespace idealconv {

/// Block boundaries b_0 < b_1 < ... Block k is [b_k, b_{k+1}).
struct Schedule {
  enum class Kind { Geometric, Polynomial };
  Kind kind = Kind::Geometric;
  nat b0 = 1;  // geometric: b_k = b0 * r^k
  nat ratio = 2;
  int degree = 2; // polynomial: b_k = k^degree

  static Schedule geometric(nat b0, nat ratio);
  static Schedule polynomial(int degree);

  /// b_k, or -1 past 2^62.
  nat boundary(nat k) const;
  /// Index of the block holding n; -1 when n < b_0.
  nat block_of(nat n) const;

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

/// Union of the blocks whose index is picked by a selector over {0, 1, 2, ...}.
/// Index 0 is read off the selector's periodic part; the points below b_0 are
/// in the set iff `low` is set (this keeps the class closed under complement).
class BlockSet {
public:
  BlockSet(Schedule schedule, APSet selector, bool low = false);

  const Schedule& schedule() const { return schedule_; }
  const APSet& selector() const { return selector_; }
  bool low() const { return low_; }

  bool selects(nat block) const;
  bool contains(nat n) const;
  nat count(nat n) const;
  nat enumerate(nat k) const;
  bool is_finite() const;

  BlockSet complement() const;
  /// Same schedule required; throws InvalidArgument otherwise.
  BlockSet unite(const BlockSet& other) const;
  BlockSet intersect(const BlockSet& other) const;

  /// Exact d*, d_* and Pólya upper density.
  Rational upper_density() const;
  Rational lower_density() const;
  Rational polya_upper() const;
  /// Exact α-density when it is rational (α = 0, α = -1, or polynomial schedules).
  std::optional<Rational> weighted_upper_density(const Rational& alpha) const;

  std::string describe() const;

  friend bool operator==(const BlockSet&, const BlockSet&) = default;

private:
  // geometric density at the end of block c, as a function of c mod M
  Rational geometric_ratio(nat c) const;

  Schedule schedule_;
  APSet selector_;
  bool low_ = false;
};

/// A set known only through its membership predicate.
class GeneralSet {
public:
  using Predicate = std::function<bool(nat)>;

  GeneralSet(Predicate member, std::string name);

  bool contains(nat n) const { return n >= 1 && member_(n); }
  nat count(nat n) const;
  nat enumerate(nat k, nat limit = nat{1} << 32) const;
  const std::string& name() const { return name_; }

private:
  Predicate member_;
  std::string name_;
};

/// Any subset of ω the engine can hold.
class AnySet {
public:
  AnySet(NatSet s) : value_(std::move(s)) {}   // NOLINT
  AnySet(APSet s) : value_(NatSet(std::move(s))) {} // NOLINT
  AnySet(BlockSet s) : value_(std::move(s)) {}  // NOLINT
  AnySet(GeneralSet s) : value_(std::move(s)) {} // NOLINT

  bool is_nat() const { return std::holds_alternative<NatSet>(value_); }
  bool is_block() const { return std::holds_alternative<BlockSet>(value_); }
  bool is_general() const { return std::holds_alternative<GeneralSet>(value_); }
  /// Exact representation (not a bare predicate).
  bool is_exact() const { return !is_general(); }
  const NatSet& nat_set() const { return std::get<NatSet>(value_); }
  const BlockSet& block_set() const { return std::get<BlockSet>(value_); }
  const GeneralSet& general_set() const { return std::get<GeneralSet>(value_); }

  bool contains(nat n) const;
  nat count(nat n) const;
  nat enumerate(nat k) const;
  std::string describe() const;

  AnySet complement() const;
  AnySet unite(const AnySet& other) const;
  AnySet intersect(const AnySet& other) const;
  AnySet minus(const AnySet& other) const;

private:
  GeneralSet as_general() const;

  std::variant<NatSet, BlockSet, GeneralSet> value_;
};

using Cell = std::pair<nat, nat>;

/// Finite union of rectangles R × C in ω×ω, with finitely many corrections.
class PairSet {
public:
  struct Rect {
    APSet rows;
    APSet cols;
    friend bool operator==(const Rect&, const Rect&) = default;
  };

  PairSet() = default;
  explicit PairSet(std::vector<Rect> rects, std::vector<Cell> includes = {},
                   std::vector<Cell> excludes = {});

  static PairSet all() { return PairSet({{APSet::all(), APSet::all()}}); }
  static PairSet rect(APSet rows, APSet cols) { return PairSet({{std::move(rows), std::move(cols)}}); }

  const std::vector<Rect>& rects() const { return rects_; }
  const std::vector<Cell>& includes() const { return includes_; }
  const std::vector<Cell>& excludes() const { return excludes_; }

  bool contains(nat i, nat j) const;
  bool rect_contains(nat i, nat j) const;
  /// |A ∩ [1,n]×[1,m]|
  BigInt count(nat n, nat m) const;

  PairSet unite(const PairSet& other) const;
  PairSet intersect(const PairSet& other) const;
  PairSet complement() const;
  PairSet minus(const PairSet& other) const { return intersect(other.complement()); }

  /// Pringsheim limit of μ_{n,m}: the product density of the rectangle union.
  Rational limit_measure() const;

  std::string describe() const;

private:
  void normalize();

  std::vector<Rect> rects_;
  std::vector<Cell> includes_;
  std::vector<Cell> excludes_;
};

/// {unpairing(i, j) : (i, j) ∈ A}, as a predicate on ω.
GeneralSet unpairing_image(const PairSet& a);

} // namespace idealconv
