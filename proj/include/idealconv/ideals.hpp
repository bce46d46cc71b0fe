#pragma once

#include <optional>
#include <string>
#include <vector>

#include "idealconv/density.hpp"
#include "idealconv/sets.hpp"

namespace idealconv {

/// A named ideal on ω (or on ω×ω). Capability flags record the known
/// classification; they are not derived.
struct IdealDesc {
  enum class Kind { Fin, Density, Polya, Summable, Pringsheim, DensityPr };

  Kind kind = Kind::Fin;
  Rational alpha = 0;     // Density only
  bool via_pairing = false; // a pair ideal moved to ω by the Cantor bijection

  static IdealDesc fin() { return {Kind::Fin}; }
  static IdealDesc z() { return {Kind::Density, 0}; }
  static IdealDesc logz() { return {Kind::Density, -1}; }
  static IdealDesc density(Rational alpha);
  static IdealDesc polya() { return {Kind::Polya}; }
  static IdealDesc summable() { return {Kind::Summable}; }
  static IdealDesc pringsheim() { return {Kind::Pringsheim}; }
  static IdealDesc density_pr() { return {Kind::DensityPr}; }

  /// "fin", "z", "logz", "alpha:<q>", "polya", "sum:1/n", "pr", "zpr".
  static IdealDesc parse(const std::string& name);
  std::string name() const;

  bool is_p() const;
  bool is_g() const;
  bool on_pairs() const { return (kind == Kind::Pringsheim || kind == Kind::DensityPr) && !via_pairing; }

  friend bool operator==(const IdealDesc&, const IdealDesc&) = default;
};

/// Membership of S in I; nullopt when an oracle interval is inconclusive.
std::optional<bool> try_member(const IdealDesc& ideal, const AnySet& s);
/// Throws Undecidable when try_member has no answer.
bool member(const IdealDesc& ideal, const AnySet& s);
bool in_dual(const IdealDesc& ideal, const AnySet& s);
bool positive(const IdealDesc& ideal, const AnySet& s);

bool member(const IdealDesc& ideal, const PairSet& a);
bool in_dual(const IdealDesc& ideal, const PairSet& a);
bool positive(const IdealDesc& ideal, const PairSet& a);

/// Known inclusions J ⊆ I between the named ideals on ω.
bool ideal_subset(const IdealDesc& j, const IdealDesc& i);

/// A countable family of sets, in one of the forms the engine can diagonalize.
struct SetFamily {
  enum class Form { Finite, Tails, Opaque };
  Form form = Form::Finite;
  std::vector<AnySet> sets; // Finite: the members; Tails: {S}, meaning A_j = S ∩ [j, ∞)

  static SetFamily finite(std::vector<AnySet> sets) { return {Form::Finite, std::move(sets)}; }
  static SetFamily tails(AnySet s) { return {Form::Tails, {std::move(s)}}; }
  static SetFamily opaque() { return {Form::Opaque, {}}; }
};

/// A ∈ I with A_j ∖ A finite for every member of the family.
/// Throws NotAPIdeal, UnsupportedFamily, or HypothesisViolated when a member is not in I.
AnySet pideal_witness(const IdealDesc& ideal, const SetFamily& family);
PairSet pideal_witness(const IdealDesc& ideal, const std::vector<PairSet>& family);

struct ReindexReport {
  bool pass = false;
  bool a_in_dual = false;
  bool b_in_dual = false;
  bool ab_in_dual = false;
  APSet ab;
};

/// Computes A_B and checks B ∈ I* ⇔ A_B ∈ I*; vacuous when A ∉ I*. Throws NotAGIdeal.
ReindexReport gideal_reindex_check(const IdealDesc& ideal, const APSet& a, const APSet& b);

/// The pair ideal I (pr or zpr) moved to ω through the Cantor bijection.
IdealDesc to_omega_ideal(const IdealDesc& pair_ideal);
/// Membership of {unpairing(i, j) : (i, j) ∈ A} in to_omega_ideal(I).
bool member_image(const IdealDesc& omega_ideal, const PairSet& a);

} // namespace idealconv
