#include <algorithm>
#include <functional>

#include "idealconv/errors.hpp"
#include "idealconv/sets.hpp"

namespace idealconv {

namespace {

void sort_unique(std::vector<Cell>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Sum over non-empty subsets T of the rectangles of (-1)^{|T|+1} f(∩rows, ∩cols).
// Branches whose intersection is already empty contribute nothing and are cut.
template <class T>
T inclusion_exclusion(const std::vector<PairSet::Rect>& rects,
                      const std::function<T(const APSet&, const APSet&)>& f) {
  T total = 0;
  std::function<void(std::size_t, const APSet&, const APSet&, int)> go =
      [&](std::size_t from, const APSet& rows, const APSet& cols, int size) {
        for (std::size_t i = from; i < rects.size(); ++i) {
          APSet r = size == 0 ? rects[i].rows : rows.intersect(rects[i].rows);
          APSet c = size == 0 ? rects[i].cols : cols.intersect(rects[i].cols);
          if (r.is_empty() || c.is_empty())
            continue;
          T term = f(r, c);
          if (size % 2 == 0)
            total += term;
          else
            total -= term;
          go(i + 1, r, c, size + 1);
        }
      };
  go(0, APSet(), APSet(), 0);
  return total;
}

} // namespace

PairSet::PairSet(std::vector<Rect> rects, std::vector<Cell> includes, std::vector<Cell> excludes)
    : rects_(std::move(rects)), includes_(std::move(includes)), excludes_(std::move(excludes)) {
  normalize();
}

void PairSet::normalize() {
  std::vector<Rect> kept;
  for (auto& r : rects_) {
    if (r.rows.is_empty() || r.cols.is_empty())
      continue;
    if (std::find(kept.begin(), kept.end(), r) == kept.end())
      kept.push_back(r);
  }
  // drop rectangles inside another one
  std::vector<Rect> out;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    bool inside = false;
    for (std::size_t j = 0; j < kept.size() && !inside; ++j)
      inside = j != i && kept[i].rows.subset_of(kept[j].rows) &&
               kept[i].cols.subset_of(kept[j].cols) && !(kept[i] == kept[j]);
    if (!inside)
      out.push_back(kept[i]);
  }
  rects_ = std::move(out);
  std::vector<Cell> inc, exc;
  for (const auto& c : includes_)
    if (c.first >= 1 && c.second >= 1 && !rect_contains(c.first, c.second))
      inc.push_back(c);
  for (const auto& c : excludes_)
    if (rect_contains(c.first, c.second))
      exc.push_back(c);
  sort_unique(inc);
  sort_unique(exc);
  std::vector<Cell> inc2;
  std::set_difference(inc.begin(), inc.end(), exc.begin(), exc.end(), std::back_inserter(inc2));
  includes_ = std::move(inc2);
  excludes_ = std::move(exc);
}

bool PairSet::rect_contains(nat i, nat j) const {
  return std::any_of(rects_.begin(), rects_.end(),
                     [&](const Rect& r) { return r.rows.contains(i) && r.cols.contains(j); });
}

bool PairSet::contains(nat i, nat j) const {
  if (i < 1 || j < 1)
    return false;
  Cell c{i, j};
  if (std::binary_search(includes_.begin(), includes_.end(), c))
    return true;
  if (std::binary_search(excludes_.begin(), excludes_.end(), c))
    return false;
  return rect_contains(i, j);
}

BigInt PairSet::count(nat n, nat m) const {
  if (n < 1 || m < 1)
    return 0;
  BigInt total = inclusion_exclusion<BigInt>(rects_, [n, m](const APSet& r, const APSet& c) {
    return BigInt(r.count(n)) * c.count(m);
  });
  for (const auto& c : includes_)
    if (c.first <= n && c.second <= m)
      total += 1;
  for (const auto& c : excludes_)
    if (c.first <= n && c.second <= m)
      total -= 1;
  return total;
}

Rational PairSet::limit_measure() const {
  return inclusion_exclusion<Rational>(
      rects_, [](const APSet& r, const APSet& c) { return r.density() * c.density(); });
}

namespace {

template <class Op>
PairSet with_corrections(std::vector<PairSet::Rect> rects, const PairSet& a, const PairSet& b,
                         Op op) {
  PairSet base(std::move(rects));
  std::vector<Cell> points;
  for (const auto* s : {&a, &b}) {
    points.insert(points.end(), s->includes().begin(), s->includes().end());
    points.insert(points.end(), s->excludes().begin(), s->excludes().end());
  }
  std::vector<Cell> inc, exc;
  for (const auto& p : points) {
    if (op(a.contains(p.first, p.second), b.contains(p.first, p.second)))
      inc.push_back(p);
    else
      exc.push_back(p);
  }
  return PairSet(base.rects(), inc, exc);
}

} // namespace

PairSet PairSet::unite(const PairSet& other) const {
  std::vector<Rect> rects = rects_;
  rects.insert(rects.end(), other.rects_.begin(), other.rects_.end());
  return with_corrections(rects, *this, other, [](bool x, bool y) { return x || y; });
}

PairSet PairSet::intersect(const PairSet& other) const {
  std::vector<Rect> rects;
  for (const auto& a : rects_)
    for (const auto& b : other.rects_)
      rects.push_back({a.rows.intersect(b.rows), a.cols.intersect(b.cols)});
  return with_corrections(rects, *this, other, [](bool x, bool y) { return x && y; });
}

PairSet PairSet::complement() const {
  // ω² ∖ ∪ R×C = ∩ ((ω∖R)×ω ∪ ω×(ω∖C)), expanded distributively
  std::vector<Rect> acc{{APSet::all(), APSet::all()}};
  for (const auto& r : rects_) {
    std::vector<Rect> next;
    for (const auto& x : acc) {
      next.push_back({x.rows.minus(r.rows), x.cols});
      next.push_back({x.rows, x.cols.minus(r.cols)});
    }
    acc = PairSet(next).rects();
  }
  PairSet empty;
  return with_corrections(acc, *this, empty, [](bool x, bool) { return !x; });
}

std::string PairSet::describe() const {
  if (rects_.empty() && includes_.empty())
    return "∅";
  std::string out;
  for (std::size_t i = 0; i < rects_.size(); ++i)
    out += (i ? " ∪ " : "") + rects_[i].rows.describe() + "×" + rects_[i].cols.describe();
  if (!includes_.empty())
    out += " +" + std::to_string(includes_.size()) + " cells";
  if (!excludes_.empty())
    out += " -" + std::to_string(excludes_.size()) + " cells";
  return out;
}

GeneralSet unpairing_image(const PairSet& a) {
  return GeneralSet(
      [a](nat n) {
        auto [i, j] = pairing(n);
        return a.contains(i, j);
      },
      "unpair(" + a.describe() + ")");
}

} // namespace idealconv
