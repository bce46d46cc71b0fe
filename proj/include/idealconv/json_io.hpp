#pragma once

#include "json.hpp"

#include "idealconv/ideals.hpp"
#include "idealconv/sequences.hpp"
#include "idealconv/sets.hpp"

namespace idealconv {

using json = nlohmann::json;

// Rationals are "p/q" strings; integers are also accepted on input.
json to_json(const Rational& q);
Rational rational_from_json(const json& j);

json to_json(const APSet& s);
json to_json(const NatSet& s);
json to_json(const BlockSet& s);
/// Throws SchemaError for predicate-only sets.
json to_json(const AnySet& s);
json to_json(const PairSet& s);
json to_json(const Term& t);
json to_json(const SymSeq& x);
json to_json(const DoubleSeq& x);

// All parsers throw SchemaError on malformed input.
APSet apset_from_json(const json& j);
NatSet natset_from_json(const json& j);
AnySet anyset_from_json(const json& j);
PairSet pairset_from_json(const json& j);
Term term_from_json(const json& j);
SymSeq symseq_from_json(const json& j);
DoubleSeq doubleseq_from_json(const json& j);

} // namespace idealconv
