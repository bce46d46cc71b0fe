#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "idealconv/ideals.hpp"
#include "idealconv/json_io.hpp"
#include "idealconv/sequences.hpp"

namespace idealconv {

enum class Profile { Generic, Convergent, CompactValued, DualPair, GroupPair };

Profile parse_profile(const std::string& name);
std::string profile_name(Profile p);

/// Everything one trial of a check looks at. Serializable, so a failing trial
/// can be re-checked from its JSON alone.
struct Instance {
  Profile profile = Profile::Generic;
  SymSeq x;
  std::optional<SymSeq> y;
  IdealDesc ideal;
  std::optional<IdealDesc> smaller;
  std::vector<NatSet> sets;
  std::vector<Interval> intervals;
  std::optional<DoubleSeq> dx;
  std::optional<Rational> value;
};

json to_json(const Instance& inst);
Instance instance_from_json(const json& j);

using Rng = std::mt19937_64;

/// Deterministic in (seed, profile, ideal).
Instance generate_instance(std::uint64_t seed, Profile profile, const IdealDesc& ideal);

/// Random members of I and of I*, within the exact class the engine decides.
NatSet random_small(Rng& rng, const IdealDesc& ideal);
NatSet random_large(Rng& rng, const IdealDesc& ideal);

SymSeq random_seq(Rng& rng);
/// Pieces off I are redirected to one piece-limit, so that x is I-convergent.
SymSeq make_convergent(Rng& rng, const SymSeq& x, const IdealDesc& ideal);
/// Values in the union of the intervals.
SymSeq random_valued_in(Rng& rng, const std::vector<Interval>& f);
/// One to three disjoint closed intervals with endpoints in [-5, 5].
std::vector<Interval> random_intervals(Rng& rng);
Rational random_point(Rng& rng, const std::vector<Interval>& f);
/// Three rectangle pieces; Z_Pr-convergent to the returned value about half of the time.
std::pair<DoubleSeq, Rational> random_double(Rng& rng);

struct CheckSpec {
  std::string id;
  int trials = 0;          // 0: the default for the id
  std::uint64_t seed = 42;
  std::vector<IdealDesc> ideals; // empty: the default family for the id
};

struct Verdict {
  std::string id;
  bool pass = true;
  int trials = 0;
  std::uint64_t seed = 0;
  std::optional<json> counterexample; // {"trial", "instance", "explanation"}
};

json to_json(const Verdict& v);

/// Ids of run_all, in catalog order.
const std::vector<std::string>& catalog();
/// Deliberately falsified variants; expected to fail.
const std::vector<std::string>& negative_controls();
int default_trials(const std::string& id);

/// Throws UnknownCheckId.
Verdict check(const CheckSpec& spec);
std::vector<Verdict> run_all(std::uint64_t seed);

/// Runs the property of `id` on one instance; nullopt when it holds.
std::optional<std::string> recheck(const std::string& id, const Instance& inst);

} // namespace idealconv
