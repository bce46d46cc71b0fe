#pragma once

#include <optional>
#include <string>
#include <vector>

#include "idealconv/ideals.hpp"
#include "idealconv/natset.hpp"
#include "idealconv/rational.hpp"
#include "idealconv/sets.hpp"

namespace idealconv {

/// One summand of a piece term, evaluated at the index m reached from n by
/// the enumeration chain (newest frame first):
///   Harmonic   c / k,   k = count(anchor, m)
///   Geometric  c ρ^k,   k = count(anchor, m)
///   Linear     c m
/// An absent anchor means the support of the piece itself; then frames is empty.
struct Component {
  enum class Kind { Harmonic, Geometric, Linear };

  Kind kind = Kind::Harmonic;
  Rational c = 0;
  Rational rho = 0;
  std::optional<NatSet> anchor;
  std::vector<NatSet> frames;

  /// Same kind, ρ, anchor and frames: the coefficients may be added.
  bool like(const Component& o) const;
};

class Term {
public:
  Term() = default;
  static Term constant(Rational q);
  static Term harmonic(Rational q, Rational c);
  /// Throws InvalidArgument unless |ρ| < 1.
  static Term geometric(Rational q, Rational c, Rational rho);
  static Term unbounded(Rational c);

  const Rational& offset() const { return q_; }
  const std::vector<Component>& parts() const { return parts_; }

  bool is_constant() const { return parts_.empty(); }
  /// Throws Undecidable when linear parts of opposite sign run along different frames.
  bool is_unbounded() const;
  /// The piece-limit; nullopt for unbounded terms.
  std::optional<Rational> limit() const;

  /// Value at n, a member of `support`. `pos`, when known, is count(support, n).
  Rational value(nat n, const NatSet& support, std::optional<nat> pos = std::nullopt) const;

  /// Σ |c| / k + Σ |c| |ρ|^k bound on |value - offset| for bounded terms, at position k.
  /// Returns the least K with the bound below delta for every k >= K.
  nat settle_position(const Rational& delta) const;

  /// Replaces absent anchors by `support`, so the term survives a change of support.
  Term anchored(const NatSet& support) const;
  /// The term read along frame: n ↦ term(enumerate(frame, n)).
  Term along(const NatSet& frame) const;

  Term operator-() const;
  friend Term operator+(const Term& a, const Term& b);
  friend Term operator-(const Term& a, const Term& b) { return a + (-b); }
  Term shifted(const Rational& d) const;

  /// Structurally zero after merging like parts.
  bool is_zero() const { return q_ == 0 && parts_.empty(); }
  /// {n in support : value != 0} is cofinite in the support (true), empty (false);
  /// throws Undecidable when neither can be shown.
  bool eventually_nonzero() const;

  std::string describe() const;

private:
  void normalize();
  Rational q_ = 0;
  std::vector<Component> parts_;
};

struct Piece {
  NatSet support;
  Term term;
};

class SymSeq {
public:
  SymSeq() : SymSeq(constant(0)) {}
  /// Checks that the supports partition ω; throws InvalidArgument otherwise.
  explicit SymSeq(std::vector<Piece> pieces);
  static SymSeq constant(Rational q);
  /// Skips the partition check; for pieces that partition ω by construction.
  static SymSeq trusted(std::vector<Piece> pieces);

  const std::vector<Piece>& pieces() const { return pieces_; }
  std::size_t piece_of(nat n) const;

  /// Distinct limits of the bounded pieces, increasing.
  std::vector<Rational> piece_limits() const;

  /// Merges pieces carrying the same constant and drops empty AP supports.
  SymSeq simplified() const;
  std::string describe() const;

private:
  struct Unchecked {};
  SymSeq(Unchecked, std::vector<Piece> pieces) : pieces_(std::move(pieces)) {}
  std::vector<Piece> pieces_;
};

Rational eval(const SymSeq& x, nat n);

/// x - y on the common refinement of the two partitions.
SymSeq subtract(const SymSeq& x, const SymSeq& y);

/// {n : |x_n - l| >= eps}, exact including the finite head corrections.
NatSet level_set(const SymSeq& x, const Rational& l, const Rational& eps);

/// Radii at which the level sets around l may change, plus one below the
/// smallest distance to another piece-limit.
std::vector<Rational> critical_eps(const SymSeq& x, const Rational& l);

struct LevelCert {
  Rational eps;
  NatSet level;
  bool in_ideal = false;
};

struct LimitReport {
  std::optional<Rational> limit;
  std::vector<LevelCert> certificate; // for the limit, when there is one
};

LimitReport ideal_lim(const SymSeq& x, const IdealDesc& ideal);

struct StarReport {
  std::optional<Rational> limit;
  NatSet witness; // in I*, x restricted to it converges to the limit
  std::string reason; // why there is no limit
};

StarReport istar_lim(const SymSeq& x, const IdealDesc& ideal);

struct ClusterReport {
  std::vector<Rational> points;
  std::optional<NatSet> divergent; // union of the unbounded supports
  std::optional<bool> divergent_in_ideal;
  bool exact = true;

  std::string str(const std::string& symbol) const;
};

ClusterReport cluster_points(const SymSeq& x, const IdealDesc& ideal);
ClusterReport limit_points(const SymSeq& x, const IdealDesc& ideal);

bool equivalent(const SymSeq& x, const SymSeq& y, const IdealDesc& ideal);

/// Supports of pieces whose term is eventually nonzero: {n : x_n != 0} up to a finite set.
NatSet nonzero_support(const SymSeq& x);

struct Decomposition {
  SymSeq y;
  SymSeq z;
};

/// y -> l, {n : z_n != 0} in I, x = y + z. Throws NotConvergent, NotAPIdeal.
Decomposition decompose(const SymSeq& x, const IdealDesc& ideal, const Rational& l);

/// Sequence k ↦ x_{enumerate(s, k)}; s must be infinite.
SymSeq subseq_on(const SymSeq& x, const NatSet& s);

/// y ≡_I x with Γ_y(J) = Γ_x(I). Requires a P-ideal I and J ⊆ I.
SymSeq compress(const SymSeq& x, const IdealDesc& ideal, const IdealDesc& smaller);

struct Closure {
  std::vector<Rational> points;
  bool unbounded = false; // some unbounded piece survives off every witness
};

/// ∩ over the witnesses J of the closure of {x_n : n ∉ J}.
Closure filter_base_closures(const SymSeq& x, const IdealDesc& ideal,
                             const std::vector<NatSet>& witnesses);

struct Interval {
  Rational lo, hi;
};

struct AttractorReport {
  bool attracts = false;   // {n : x_n ∉ U} ∈ I for every tested open U ⊇ C
  bool contains_gamma = false;
  bool minimal = false;    // C = Γ as point sets restricted to the piece-limits
  std::vector<Rational> gamma;
};

/// Throws HypothesisViolated unless the unbounded mass of x is in I.
AttractorReport smallest_closed_attractor_check(const SymSeq& x, const IdealDesc& ideal,
                                                const std::vector<Interval>& c);

/// Double sequences with constant values on PairSet pieces.
struct DoublePiece {
  PairSet support;
  Rational value;
};

class DoubleSeq {
public:
  explicit DoubleSeq(std::vector<DoublePiece> pieces);
  const std::vector<DoublePiece>& pieces() const { return pieces_; }
  Rational eval(nat i, nat j) const;
  /// {(i, j) : x_ij != l}
  PairSet off(const Rational& l) const;

private:
  std::vector<DoublePiece> pieces_;
};

struct DoubleDecomposition {
  DoubleSeq y;
  DoubleSeq z;
};

/// Requires x Z_Pr-convergent to l; y is I_Pr-convergent to l and z vanishes off a Z_Pr set.
DoubleDecomposition decompose_double(const DoubleSeq& x, const Rational& l);

} // namespace idealconv
