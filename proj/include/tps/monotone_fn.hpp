#pragma once

#include <algorithm>
#include <vector>

#include "tps/classify.hpp"
#include "tps/errors.hpp"
#include "tps/preorder.hpp"
#include "tps/rational.hpp"

namespace tps {

// Total map from a space's points to exact rationals in [0,1].
struct MonotoneFn {
  std::vector<Rational> values;

  explicit MonotoneFn(std::vector<Rational> v) : values(std::move(v)) {
    for (const auto& r : values)
      if (!in_unit_interval(r)) throw InvalidInput("function value outside [0,1]");
  }

  static MonotoneFn constant(int n, const Rational& r) {
    return MonotoneFn(std::vector<Rational>(static_cast<size_t>(n), r));
  }

  int n() const { return static_cast<int>(values.size()); }
  const Rational& at(int x) const { return values[x]; }

  PointSet level_set(const Rational& r) const {
    PointSet s;
    for (int x = 0; x < n(); ++x)
      if (values[x] == r) s.add(x);
    return s;
  }

  std::vector<Rational> distinct_values() const {
    std::vector<Rational> vs = values;
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
  }

  bool operator==(const MonotoneFn& o) const { return values == o.values; }
};

// Definitional continuity: the preimage of every open subset of [0,1] must be
// open.  Finitely decided by splitting at midpoints between consecutive
// distinct values and requiring both open-ray preimages to be open; preimages
// of arbitrary opens are finite unions/intersections of those rays.
inline bool is_continuous(const PreorderedSpace& ps, const MonotoneFn& f) {
  if (f.n() != ps.n()) throw InvalidInput("function not total on the space");
  auto vs = f.distinct_values();
  for (size_t i = 0; i + 1 < vs.size(); ++i) {
    Rational t = midpoint(vs[i], vs[i + 1]);
    PointSet below, above;
    for (int x = 0; x < ps.n(); ++x) {
      if (f.at(x) < t) below.add(x);
      if (f.at(x) > t) above.add(x);
    }
    if (!ps.topology.is_open(below) || !ps.topology.is_open(above)) return false;
  }
  return true;
}

// Derived decider: continuous iff constant on each specialization
// quasi-component.  Must agree with the definitional one (tested property).
inline bool is_continuous_by_components(const PreorderedSpace& ps, const MonotoneFn& f) {
  if (f.n() != ps.n()) throw InvalidInput("function not total on the space");
  SpaceAnalysis a = analyze(ps);
  for (const auto& comp : a.component_sets) {
    auto ms = comp.members();
    for (size_t i = 1; i < ms.size(); ++i)
      if (f.at(ms[i]) != f.at(ms[0])) return false;
  }
  return true;
}

// x <= y implies f(x) <= f(y).
inline bool is_isotone(const PreorderedSpace& ps, const MonotoneFn& f) {
  if (f.n() != ps.n()) throw InvalidInput("function not total on the space");
  for (int x = 0; x < ps.n(); ++x)
    for (int y : ps.order.up(x).members())
      if (f.at(x) > f.at(y)) return false;
  return true;
}

// x ~ y implies f(x) = f(y), and x < y implies f(x) < f(y).
inline bool is_utility(const PreorderedSpace& ps, const MonotoneFn& f) {
  if (f.n() != ps.n()) throw InvalidInput("function not total on the space");
  for (int x = 0; x < ps.n(); ++x)
    for (int y : ps.order.up(x).members()) {
      if (ps.order.leq(y, x)) {
        if (f.at(x) != f.at(y)) return false;
      } else {
        if (!(f.at(x) < f.at(y))) return false;
      }
    }
  return true;
}

// alpha(x,y) = 1 / (1 + (1-y)/x) = x / (x + 1 - y), with the boundary
// conventions alpha(0,y) = 0 for y < 1 and alpha(x,1) = 1 for x > 0;
// (0,1) is outside the domain.  Isotone in each argument.
inline Rational alpha_combine(const Rational& x, const Rational& y) {
  if (x == 0 && y == 1) throw InvalidInput("alpha undefined at the corner (0,1)");
  if (x == 0) return Rational(0);
  if (y == 1) return Rational(1);
  return Rational(x / (x + 1 - y));
}

// f = alpha(g, h): zero set of g, one set of h, glued into one function.
inline MonotoneFn combine_alpha(const PreorderedSpace& ps, const MonotoneFn& g,
                                const MonotoneFn& h) {
  if (!is_continuous(ps, g) || !is_isotone(ps, g) || !is_continuous(ps, h) ||
      !is_isotone(ps, h))
    throw InvalidInput("combine_alpha requires continuous isotone inputs");
  std::vector<Rational> vals;
  vals.reserve(ps.n());
  for (int x = 0; x < ps.n(); ++x) {
    if (g.at(x) == 0 && h.at(x) == 1)
      throw InvalidInput("combine_alpha: point with g=0 and h=1");
    vals.push_back(alpha_combine(g.at(x), h.at(x)));
  }
  return MonotoneFn(std::move(vals));
}

// Normalized dyadic-weight combination (sum 2^-k f_k) / (sum 2^-k).
// Zero exactly where all inputs are zero; one exactly where all are one.
inline MonotoneFn weighted_sum(const std::vector<MonotoneFn>& fs) {
  if (fs.empty()) throw InvalidInput("weighted_sum of an empty family");
  const int n = fs.front().n();
  Rational weight_total(0), w(1);
  std::vector<Rational> acc(static_cast<size_t>(n), Rational(0));
  for (const auto& f : fs) {
    if (f.n() != n) throw InvalidInput("weighted_sum over mismatched spaces");
    w /= 2;
    weight_total += w;
    for (int x = 0; x < n; ++x) acc[x] += w * f.at(x);
  }
  for (auto& v : acc) v /= weight_total;
  return MonotoneFn(std::move(acc));
}

}  // namespace tps
