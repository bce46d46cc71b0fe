#include <algorithm>

#include "idealconv/errors.hpp"
#include "idealconv/sets.hpp"

namespace idealconv {

GeneralSet::GeneralSet(Predicate member, std::string name)
    : member_(std::move(member)), name_(std::move(name)) {}

nat GeneralSet::count(nat n) const {
  nat c = 0;
  for (nat m = 1; m <= n; ++m)
    c += member_(m) ? 1 : 0;
  return c;
}

nat GeneralSet::enumerate(nat k, nat limit) const {
  if (k < 1)
    throw InvalidArgument("enumerate index must be >= 1");
  nat seen = 0;
  for (nat m = 1; m <= limit; ++m)
    if (member_(m) && ++seen == k)
      return m;
  throw FiniteSetExhausted("no element #" + std::to_string(k) + " below " + std::to_string(limit));
}

bool AnySet::contains(nat n) const {
  return std::visit([n](const auto& s) { return s.contains(n); }, value_);
}

nat AnySet::count(nat n) const {
  return std::visit([n](const auto& s) { return s.count(n); }, value_);
}

nat AnySet::enumerate(nat k) const {
  return std::visit([k](const auto& s) { return s.enumerate(k); }, value_);
}

std::string AnySet::describe() const {
  if (is_general())
    return general_set().name();
  return std::visit([](const auto& s) -> std::string {
    if constexpr (std::is_same_v<std::decay_t<decltype(s)>, GeneralSet>)
      return s.name();
    else
      return s.describe();
  }, value_);
}

GeneralSet AnySet::as_general() const {
  if (is_general())
    return general_set();
  AnySet copy = *this;
  return GeneralSet([copy](nat n) { return copy.contains(n); }, describe());
}

AnySet AnySet::complement() const {
  if (is_nat())
    return nat_set().complement();
  if (is_block())
    return block_set().complement();
  GeneralSet g = general_set();
  return GeneralSet([g](nat n) { return !g.contains(n); }, "ω∖" + g.name());
}

AnySet AnySet::unite(const AnySet& other) const {
  if (is_nat() && other.is_nat())
    return nat_set().unite(other.nat_set());
  if (is_block() && other.is_block() && block_set().schedule() == other.block_set().schedule())
    return block_set().unite(other.block_set());
  GeneralSet a = as_general(), b = other.as_general();
  return GeneralSet([a, b](nat n) { return a.contains(n) || b.contains(n); },
                    "(" + a.name() + " ∪ " + b.name() + ")");
}

AnySet AnySet::intersect(const AnySet& other) const {
  if (is_nat() && other.is_nat())
    return nat_set().intersect(other.nat_set());
  if (is_block() && other.is_block() && block_set().schedule() == other.block_set().schedule())
    return block_set().intersect(other.block_set());
  GeneralSet a = as_general(), b = other.as_general();
  return GeneralSet([a, b](nat n) { return a.contains(n) && b.contains(n); },
                    "(" + a.name() + " ∩ " + b.name() + ")");
}

AnySet AnySet::minus(const AnySet& other) const { return intersect(other.complement()); }

} // namespace idealconv
