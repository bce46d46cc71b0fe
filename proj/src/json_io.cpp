#include "idealconv/json_io.hpp"

#include "idealconv/errors.hpp"

namespace idealconv {

namespace {

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name))
    throw SchemaError(std::string("missing field '") + name + "' in " + j.dump());
  return j.at(name);
}

std::vector<nat> nat_list(const json& j) {
  if (!j.is_array())
    throw SchemaError("expected an array of integers, got " + j.dump());
  std::vector<nat> out;
  for (const auto& v : j) {
    if (!v.is_number_integer())
      throw SchemaError("expected an integer, got " + v.dump());
    out.push_back(v.get<nat>());
  }
  return out;
}

nat nat_of(const json& j) {
  if (!j.is_number_integer())
    throw SchemaError("expected an integer, got " + j.dump());
  return j.get<nat>();
}

std::vector<Cell> cells(const json& j) {
  std::vector<Cell> out;
  if (!j.is_array())
    throw SchemaError("expected an array of cells");
  for (const auto& c : j) {
    auto v = nat_list(c);
    if (v.size() != 2)
      throw SchemaError("a cell is [i, j]");
    out.emplace_back(v[0], v[1]);
  }
  return out;
}

json cells_json(const std::vector<Cell>& v) {
  json out = json::array();
  for (const auto& c : v)
    out.push_back({c.first, c.second});
  return out;
}

std::string kind_of(const json& j) {
  const json& k = field(j, "kind");
  if (!k.is_string())
    throw SchemaError("'kind' must be a string");
  return k.get<std::string>();
}

json component_json(const Component& c) {
  json out;
  switch (c.kind) {
  case Component::Kind::Harmonic:
    out["harm"] = to_json(c.c);
    break;
  case Component::Kind::Geometric:
    out["geom"] = {to_json(c.c), to_json(c.rho)};
    break;
  case Component::Kind::Linear:
    out["linear"] = to_json(c.c);
    break;
  }
  if (c.anchor)
    out["anchor"] = to_json(*c.anchor);
  if (!c.frames.empty()) {
    out["frames"] = json::array();
    for (const auto& f : c.frames)
      out["frames"].push_back(to_json(f));
  }
  return out;
}

Term component_from_json(const json& j) {
  Term t;
  if (j.contains("harm"))
    t = Term::harmonic(0, rational_from_json(j.at("harm")));
  else if (j.contains("geom")) {
    const json& g = j.at("geom");
    if (!g.is_array() || g.size() != 2)
      throw SchemaError("a geometric part is [c, rho]");
    t = Term::geometric(0, rational_from_json(g[0]), rational_from_json(g[1]));
  } else if (j.contains("linear"))
    t = Term::unbounded(rational_from_json(j.at("linear")));
  else
    throw SchemaError("unknown term part " + j.dump());
  if (j.contains("anchor"))
    t = t.anchored(natset_from_json(j.at("anchor")));
  if (j.contains("frames")) {
    if (!j.at("frames").is_array())
      throw SchemaError("'frames' must be an array");
    for (const auto& f : j.at("frames"))
      t = t.along(natset_from_json(f));
  }
  return t;
}

} // namespace

json to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const json& j) {
  if (j.is_number_integer())
    return Rational(j.get<std::int64_t>());
  if (j.is_string())
    return parse_rational(j.get<std::string>());
  throw SchemaError("expected a rational \"p/q\", got " + j.dump());
}

json to_json(const APSet& s) {
  return {{"kind", "ap"},
          {"mod", s.modulus()},
          {"residues", s.residues()},
          {"inc", s.includes()},
          {"exc", s.excludes()}};
}

json to_json(const NatSet& s) {
  switch (s.kind()) {
  case NatSet::Kind::AP:
    return to_json(s.ap());
  case NatSet::Kind::Power:
    return {{"kind", "power"}, {"p", s.power_exponent()}, {"base", to_json(s.power_base())}};
  case NatSet::Kind::Not:
    return {{"kind", "not"}, {"of", to_json(s.children().front())}};
  case NatSet::Kind::And:
  case NatSet::Kind::Or: {
    json of = json::array();
    for (const auto& k : s.children())
      of.push_back(to_json(k));
    return {{"kind", s.kind() == NatSet::Kind::And ? "and" : "or"}, {"of", of}};
  }
  case NatSet::Kind::Pre:
    return {{"kind", "pre"}, {"frame", to_json(s.frame())}, {"inner", to_json(s.inner())}};
  }
  throw SchemaError("unknown set kind");
}

json to_json(const BlockSet& s) {
  json sched;
  if (s.schedule().kind == Schedule::Kind::Geometric)
    sched = {{"geom", {{"b0", s.schedule().b0}, {"r", s.schedule().ratio}}}};
  else
    sched = {{"poly", {{"p", s.schedule().degree}}}};
  json out = {{"kind", "block"}, {"schedule", sched}, {"selector", to_json(s.selector())}};
  if (s.low())
    out["low"] = true;
  return out;
}

json to_json(const AnySet& s) {
  if (s.is_nat())
    return to_json(s.nat_set());
  if (s.is_block())
    return to_json(s.block_set());
  throw SchemaError("predicate set " + s.describe() + " has no JSON form");
}

json to_json(const PairSet& s) {
  json rects = json::array();
  for (const auto& r : s.rects())
    rects.push_back({to_json(r.rows), to_json(r.cols)});
  json out = {{"kind", "pair"}, {"rects", rects}};
  if (!s.includes().empty())
    out["inc"] = cells_json(s.includes());
  if (!s.excludes().empty())
    out["exc"] = cells_json(s.excludes());
  return out;
}

json to_json(const Term& t) {
  const auto& parts = t.parts();
  if (parts.empty())
    return {{"const", to_json(t.offset())}};
  if (parts.size() == 1 && !parts[0].anchor && parts[0].frames.empty()) {
    const auto& c = parts[0];
    if (c.kind == Component::Kind::Harmonic)
      return {{"harm", {to_json(t.offset()), to_json(c.c)}}};
    if (c.kind == Component::Kind::Geometric)
      return {{"geom", {to_json(t.offset()), to_json(c.c), to_json(c.rho)}}};
    if (t.offset() == 0)
      return {{"unbounded", to_json(c.c)}};
  }
  json ps = json::array();
  for (const auto& c : parts)
    ps.push_back(component_json(c));
  return {{"sum", {{"q", to_json(t.offset())}, {"parts", ps}}}};
}

json to_json(const SymSeq& x) {
  json pieces = json::array();
  for (const auto& p : x.pieces())
    pieces.push_back({{"support", to_json(p.support)}, {"term", to_json(p.term)}});
  return {{"pieces", pieces}};
}

json to_json(const DoubleSeq& x) {
  json pieces = json::array();
  for (const auto& p : x.pieces())
    pieces.push_back({{"support", to_json(p.support)}, {"value", to_json(p.value)}});
  return {{"pieces", pieces}};
}

APSet apset_from_json(const json& j) {
  if (kind_of(j) != "ap")
    throw SchemaError("expected an ap set, got kind '" + kind_of(j) + "'");
  nat mod = nat_of(field(j, "mod"));
  if (mod < 1)
    throw SchemaError("modulus must be >= 1");
  auto residues = nat_list(field(j, "residues"));
  auto inc = j.contains("inc") ? nat_list(j.at("inc")) : std::vector<nat>{};
  auto exc = j.contains("exc") ? nat_list(j.at("exc")) : std::vector<nat>{};
  return APSet(mod, residues, inc, exc);
}

NatSet natset_from_json(const json& j) {
  const std::string kind = kind_of(j);
  if (kind == "ap")
    return NatSet(apset_from_json(j));
  if (kind == "squares")
    return NatSet::squares();
  if (kind == "power") {
    nat p = nat_of(field(j, "p"));
    if (p < 2 || p > 8)
      throw SchemaError("power exponent must be in 2..8");
    APSet base = j.contains("base") ? apset_from_json(j.at("base")) : APSet::all();
    return NatSet::power(static_cast<int>(p), base);
  }
  if (kind == "not")
    return natset_from_json(field(j, "of")).complement();
  if (kind == "and" || kind == "or") {
    const json& of = field(j, "of");
    if (!of.is_array() || of.empty())
      throw SchemaError("'of' must be a non-empty array");
    std::vector<NatSet> kids;
    for (const auto& k : of)
      kids.push_back(natset_from_json(k));
    return kind == "and" ? NatSet::intersect_all(kids) : NatSet::unite_all(kids);
  }
  if (kind == "pre") {
    NatSet frame = natset_from_json(field(j, "frame"));
    if (frame.try_finite().value_or(false))
      throw SchemaError("preimage frame must be infinite");
    return NatSet::preimage(frame, natset_from_json(field(j, "inner")));
  }
  throw SchemaError("unknown set kind '" + kind + "'");
}

AnySet anyset_from_json(const json& j) {
  if (kind_of(j) != "block")
    return AnySet(natset_from_json(j));
  const json& sched = field(j, "schedule");
  Schedule s;
  if (sched.contains("geom")) {
    const json& g = sched.at("geom");
    nat b0 = nat_of(field(g, "b0")), r = nat_of(field(g, "r"));
    if (b0 < 1 || r < 2)
      throw SchemaError("geometric schedule needs b0 >= 1 and r >= 2");
    s = Schedule::geometric(b0, r);
  } else if (sched.contains("poly")) {
    nat p = nat_of(field(sched.at("poly"), "p"));
    if (p < 1 || p > 8)
      throw SchemaError("polynomial schedule degree must be in 1..8");
    s = Schedule::polynomial(static_cast<int>(p));
  } else {
    throw SchemaError("schedule must be 'geom' or 'poly'");
  }
  bool low = j.contains("low") && j.at("low").get<bool>();
  return AnySet(BlockSet(s, apset_from_json(field(j, "selector")), low));
}

PairSet pairset_from_json(const json& j) {
  if (kind_of(j) != "pair")
    throw SchemaError("expected a pair set");
  std::vector<PairSet::Rect> rects;
  const json& rs = field(j, "rects");
  if (!rs.is_array())
    throw SchemaError("'rects' must be an array");
  for (const auto& r : rs) {
    if (!r.is_array() || r.size() != 2)
      throw SchemaError("a rectangle is [rows, cols]");
    rects.push_back({apset_from_json(r[0]), apset_from_json(r[1])});
  }
  auto inc = j.contains("inc") ? cells(j.at("inc")) : std::vector<Cell>{};
  auto exc = j.contains("exc") ? cells(j.at("exc")) : std::vector<Cell>{};
  return PairSet(rects, inc, exc);
}

Term term_from_json(const json& j) {
  if (!j.is_object() || j.size() != 1)
    throw SchemaError("a term is one of const/harm/geom/unbounded/sum, got " + j.dump());
  auto list = [](const json& v, std::size_t n) {
    if (!v.is_array() || v.size() != n)
      throw SchemaError("expected " + std::to_string(n) + " rationals, got " + v.dump());
    std::vector<Rational> out;
    for (const auto& e : v)
      out.push_back(rational_from_json(e));
    return out;
  };
  if (j.contains("const"))
    return Term::constant(rational_from_json(j.at("const")));
  if (j.contains("harm")) {
    auto v = list(j.at("harm"), 2);
    return Term::harmonic(v[0], v[1]);
  }
  if (j.contains("geom")) {
    auto v = list(j.at("geom"), 3);
    return Term::geometric(v[0], v[1], v[2]);
  }
  if (j.contains("unbounded"))
    return Term::unbounded(rational_from_json(j.at("unbounded")));
  if (j.contains("sum")) {
    const json& s = j.at("sum");
    Term t = Term::constant(rational_from_json(field(s, "q")));
    const json& parts = field(s, "parts");
    if (!parts.is_array())
      throw SchemaError("'parts' must be an array");
    for (const auto& p : parts)
      t = t + component_from_json(p);
    return t;
  }
  throw SchemaError("unknown term " + j.dump());
}

SymSeq symseq_from_json(const json& j) {
  const json& ps = field(j, "pieces");
  if (!ps.is_array() || ps.empty())
    throw SchemaError("'pieces' must be a non-empty array");
  std::vector<Piece> pieces;
  for (const auto& p : ps)
    pieces.push_back({natset_from_json(field(p, "support")), term_from_json(field(p, "term"))});
  try {
    return SymSeq(std::move(pieces));
  } catch (const InvalidArgument& e) {
    throw SchemaError(e.what());
  }
}

DoubleSeq doubleseq_from_json(const json& j) {
  const json& ps = field(j, "pieces");
  if (!ps.is_array() || ps.empty())
    throw SchemaError("'pieces' must be a non-empty array");
  std::vector<DoublePiece> pieces;
  for (const auto& p : ps)
    pieces.push_back({pairset_from_json(field(p, "support")), rational_from_json(field(p, "value"))});
  try {
    return DoubleSeq(std::move(pieces));
  } catch (const InvalidArgument& e) {
    throw SchemaError(e.what());
  }
}

} // namespace idealconv
