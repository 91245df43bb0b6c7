#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "tps/classify.hpp"
#include "tps/errors.hpp"
#include "tps/monotone_fn.hpp"
#include "tps/preorder.hpp"
#include "tps/rational.hpp"

namespace tps {

// Disjoint open decreasing / open increasing separator.
struct SeparatorPair {
  PointSet U;  // open decreasing
  PointSet V;  // open increasing

  bool valid_for(const PreorderedSpace& ps, const PointSet& A, const PointSet& B) const {
    return !U.intersects(V) && A.subset_of(U) && B.subset_of(V) &&
           ps.topology.is_open(U) && ps.topology.is_open(V) &&
           ps.order.is_decreasing(U) && ps.order.is_increasing(V);
  }
};

namespace detail {

inline void require_closed_monotone_pair(const PreorderedSpace& ps, const PointSet& A,
                                         const PointSet& B) {
  if (ps.topology.closure(A) != A || !ps.order.is_decreasing(A))
    throw InvalidInput("A must be closed and decreasing");
  if (ps.topology.closure(B) != B || !ps.order.is_increasing(B))
    throw InvalidInput("B must be closed and increasing");
  if (A.intersects(B)) throw InvalidInput("A and B must be disjoint");
}

}  // namespace detail

// Compact-space separation through rectangle covers: per x in A the
// rectangle witnesses of graph closedness yield a decreasing neighborhood
// d(U_x) of x disjoint from the increasing neighborhood i(U_y) of each y in
// B; finite unions/intersections over the covers give monotone neighborhoods
// U', V' of A and B, and the interpolation step (largest open monotone set
// inside the neighborhood) lands on open monotone separators.  Requires a
// closed preorder; throws NotSeparable when a step finds no witness.
inline SeparatorPair separate_by_covers(const PreorderedSpace& ps, const PointSet& A,
                                        const PointSet& B) {
  detail::require_closed_monotone_pair(ps, A, B);
  SpaceAnalysis a = analyze(ps);
  if (A.empty() || B.empty()) {
    // Degenerate covers; interpolation alone applies.
    PointSet U = a.min_open_dec_of(A), V = a.min_open_inc_of(B);
    if (U.intersects(V)) throw NotSeparable("no disjoint monotone opens");
    return {U, V};
  }

  PointSet Uprime, Vprime = ps.topology.full_set();
  for (int x : A.members()) {
    // Rectangle witness at (y, x): no v near y, u near x with v <= u.
    for (int y : B.members()) {
      for (int u : ps.topology.minimal_neighborhood(x).members())
        if (ps.order.down(u).intersects(ps.topology.minimal_neighborhood(y)))
          throw NotSeparable("rectangle witness missing (preorder not closed)");
    }
    PointSet Ux = ps.order.dec_hull(ps.topology.minimal_neighborhood(x));
    PointSet Vx;
    for (int y : B.members()) Vx |= ps.order.inc_hull(ps.topology.minimal_neighborhood(y));
    Uprime |= Ux;
    Vprime &= Vx;
  }

  // Interpolation: largest open decreasing subset of U', dually for V'.
  PointSet U, V;
  for (const auto& o : a.open_dec)
    if (o.subset_of(Uprime)) U |= o;
  for (const auto& o : a.open_inc)
    if (o.subset_of(Vprime)) V |= o;
  if (!A.subset_of(U) || !B.subset_of(V) || U.intersects(V))
    throw NotSeparable("interpolation failed");
  return {U, V};
}

// Monotone separation of a closed decreasing A from a closed increasing B.
// The cover construction above is run whenever the preorder is closed (and
// its output checked); the returned pair is the canonical one: the pointwise
// minimal open monotone supersets, which minimize |U|+|V| and are unique, so
// the lexicographic tie-break never fires.  Separability is equivalent to
// their disjointness because every valid pair contains them.
inline SeparatorPair separate(const PreorderedSpace& ps, const PointSet& A,
                              const PointSet& B) {
  detail::require_closed_monotone_pair(ps, A, B);
  SpaceAnalysis a = analyze(ps);
  PointSet U = a.min_open_dec_of(A), V = a.min_open_inc_of(B);
  if (U.intersects(V)) throw NotSeparable("no disjoint monotone opens separate A and B");
  return {U, V};
}

namespace detail {

// Internal variant reusing a precomputed analysis (the constructions below
// call separate many times on one space).
inline std::optional<SeparatorPair> try_separate(const SpaceAnalysis& a, const PointSet& A,
                                                 const PointSet& B) {
  PointSet U = a.min_open_dec_of(A), V = a.min_open_inc_of(B);
  if (U.intersects(V)) return std::nullopt;
  return SeparatorPair{U, V};
}

}  // namespace detail

// Separation through the regularity route: per-point open decreasing covers
// U_x with D(U_x) disjoint from B, the dual covers V_y, and the alternating
// subtraction sequences W_n = U_n minus the accumulated I(V_i), E_n = V_n
// minus the accumulated D(U_i).  Returns (union W_n, union E_n) as the proof
// does, not the canonical pair.
inline SeparatorPair separate_via_regularity(const PreorderedSpace& ps, const PointSet& A,
                                             const PointSet& B) {
  detail::require_closed_monotone_pair(ps, A, B);
  SpaceAnalysis a = analyze(ps);

  std::vector<PointSet> U_list, V_list;
  for (int x : A.members()) {
    PointSet Ux = a.min_open_dec[x];
    if (closed_dec_hull(ps, Ux).intersects(B))
      throw NotSeparable("regularity fails at a point of A");
    U_list.push_back(Ux);
  }
  for (int y : B.members()) {
    PointSet Vy = a.min_open_inc[y];
    if (closed_inc_hull(ps, Vy).intersects(A))
      throw NotSeparable("regularity fails at a point of B");
    V_list.push_back(Vy);
  }

  PointSet U_out, V_out;
  PointSet acc_IV;  // union of I(V_i), i <= current index
  PointSet acc_DU;  // union of D(U_i)
  size_t steps = std::max(U_list.size(), V_list.size());
  for (size_t k = 0; k < steps; ++k) {
    // W_1 = U_1; W_{n+1} = U_{n+1} \ [I(V_1) u ... u I(V_n)]
    if (k < U_list.size()) U_out |= U_list[k] - acc_IV;
    if (k < U_list.size()) acc_DU |= closed_dec_hull(ps, U_list[k]);
    if (k < V_list.size()) acc_IV |= closed_inc_hull(ps, V_list[k]);
    // E_n = V_n \ [D(U_1) u ... u D(U_n)]
    if (k < V_list.size()) V_out |= V_list[k] - acc_DU;
  }
  SeparatorPair out{U_out, V_out};
  if (!out.valid_for(ps, A, B))
    throw InternalError("regularity construction produced an invalid separator");
  return out;
}

namespace detail {

// Strengthened separation: A~ in U, B~ in V with D(U) and I(V) disjoint.
// Three separation calls, mirroring "apply the preordered normality of the
// space three times".
inline SeparatorPair separate_with_disjoint_hulls(const PreorderedSpace& ps,
                                                  const SpaceAnalysis& a, const PointSet& A,
                                                  const PointSet& B) {
  auto s1 = try_separate(a, A, B);
  if (!s1) throw NotSeparable("no separator for the pair");
  PointSet DU1 = closed_dec_hull(ps, s1->U);
  auto s2 = try_separate(a, DU1, B);
  if (!s2) throw NotSeparable("no separator for D(U') vs B");
  PointSet IV2 = closed_inc_hull(ps, s2->V);
  auto s3 = try_separate(a, A, IV2);
  if (!s3) throw NotSeparable("no separator for A vs I(V'')");
  SeparatorPair out{s3->U, s2->V};
  if (closed_dec_hull(ps, out.U).intersects(closed_inc_hull(ps, out.V)))
    throw InternalError("hull-disjoint separation invariant violated");
  return out;
}

}  // namespace detail

// Urysohn-type isotone separation: a chain of open decreasing sets U_r over
// dyadic levels with D(U_r) inside every later level, anchored at r=0 by the
// canonical separator of (A,B) and capped at r=1 by the complement of B;
// f(x) = min{r : x in U_r}, f = 1 on B.  depth counts insertion rounds
// (each round splits every gap), default |points|.
inline MonotoneFn urysohn(const PreorderedSpace& ps, const PointSet& A, const PointSet& B,
                          int depth = -1) {
  detail::require_closed_monotone_pair(ps, A, B);
  const int n = ps.n();
  if (depth < 0) depth = n;
  if (A.empty() && B.empty()) return MonotoneFn::constant(n, rat(1, 2));

  SpaceAnalysis a = analyze(ps);
  auto base = detail::try_separate(a, A, B);
  if (!base) throw NotSeparable("no separator for (A,B)");

  std::map<Rational, PointSet> chain;
  chain[Rational(0)] = base->U;
  chain[Rational(1)] = B.complement(n);

  for (int round = 0; round < depth; ++round) {
    std::map<Rational, PointSet> inserted;
    auto it = chain.begin();
    auto next = std::next(it);
    for (; next != chain.end(); ++it, ++next) {
      PointSet lower_hull = closed_dec_hull(ps, it->second);
      PointSet upper_complement = next->second.complement(n);
      auto mid = detail::try_separate(a, lower_hull, upper_complement);
      if (!mid)
        throw InternalError("dyadic insertion failed on a normally preordered space");
      inserted[midpoint(it->first, next->first)] = mid->U;
    }
    chain.merge(inserted);
  }

  std::vector<Rational> vals(static_cast<size_t>(n), Rational(1));
  for (int x = 0; x < n; ++x)
    for (const auto& [r, set] : chain)
      if (set.contains(x)) {
        vals[x] = r;
        break;
      }
  return MonotoneFn(std::move(vals));
}

// ----- Extension machinery (finite form) -----

// A continuous isotone function on the subspace S, given by its values on
// the ambient indices of S.
struct PartialFn {
  PointSet domain;
  std::map<int, Rational> values;  // keyed by ambient index

  static PartialFn on(const PointSet& dom, std::map<int, Rational> vals) {
    PartialFn f;
    f.domain = dom;
    f.values = std::move(vals);
    for (int x : dom.members())
      if (!f.values.count(x)) throw InvalidInput("function not total on S");
    if (f.values.size() != static_cast<size_t>(dom.count()))
      throw InvalidInput("function defined off S");
    for (auto& [x, v] : f.values)
      if (!in_unit_interval(v)) throw InvalidInput("function value outside [0,1]");
    return f;
  }

  // Ambient-index sublevel / superlevel subsets of S.
  PointSet sublevel(const Rational& t) const {
    PointSet s;
    for (auto& [x, v] : values)
      if (v <= t) s.add(x);
    return s;
  }
  PointSet superlevel(const Rational& t) const {
    PointSet s;
    for (auto& [x, v] : values)
      if (v >= t) s.add(x);
    return s;
  }

  std::vector<Rational> distinct_values() const {
    std::vector<Rational> vs;
    for (auto& [x, v] : values) vs.push_back(v);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
  }
};

namespace detail {

inline void require_continuous_isotone_on_subspace(const PreorderedSpace& ps,
                                                   const PartialFn& f) {
  if (f.domain.empty()) return;
  PreorderedSubspace sub = preordered_subspace(ps, f.domain);
  std::vector<Rational> vals;
  for (int amb : sub.to_ambient) vals.push_back(f.values.at(amb));
  MonotoneFn g{std::move(vals)};
  if (!is_isotone(sub.space, g)) throw InvalidInput("function not isotone on S");
  if (!is_continuous(sub.space, g)) throw InvalidInput("function not continuous on S");
}

}  // namespace detail

// Extension condition: for consecutive distinct values v < v' of f the
// ambient hulls D(f^-1([0,v])) and I(f^-1([v',1])) are disjoint.  Sublevel
// sets are stepwise in the threshold, so the consecutive pairs decide every
// real pair xi < xi'.
inline std::optional<ConditionViolated> extension_condition_violation(
    const PreorderedSpace& ps, const PartialFn& f) {
  auto vs = f.distinct_values();
  for (size_t i = 0; i + 1 < vs.size(); ++i) {
    PointSet lower = closed_dec_hull(ps, f.sublevel(vs[i]));
    PointSet upper = closed_inc_hull(ps, f.superlevel(vs[i + 1]));
    PointSet both = lower & upper;
    if (!both.empty()) {
      int witness = both.next(0);
      return ConditionViolated("extension condition fails", to_string(vs[i]),
                               to_string(vs[i + 1]), ps.topology.name(witness));
    }
  }
  return std::nullopt;
}

inline bool check_extension_condition(const PreorderedSpace& ps, const PartialFn& f) {
  detail::require_continuous_isotone_on_subspace(ps, f);
  return !extension_condition_violation(ps, f).has_value();
}

// Extend f from the subspace S to the whole space: first to closure(S) by
// minimal-neighborhood constancy, then by telescoped urysohn insertions
// between the ambient hulls of consecutive sublevel/superlevel sets,
// F = v_1 + sum_i (v_{i+1} - v_i) h_i.
inline MonotoneFn extend_isotone(const PreorderedSpace& ps, const PartialFn& f) {
  detail::require_continuous_isotone_on_subspace(ps, f);
  if (auto violation = extension_condition_violation(ps, f)) throw *violation;

  const int n = ps.n();
  if (f.domain.empty()) return MonotoneFn::constant(n, rat(1, 2));

  // Closure extension: each x in cl(S)\S sees a single f-value on U_x ∩ S.
  PartialFn g = f;
  PointSet closure = ps.topology.closure(f.domain);
  for (int x : (closure - f.domain).members()) {
    PointSet seen = ps.topology.minimal_neighborhood(x) & f.domain;
    std::optional<Rational> v;
    for (int y : seen.members()) {
      if (v && *v != f.values.at(y))
        throw InternalError("closure extension met two values despite the condition");
      v = f.values.at(y);
    }
    g.values[x] = *v;
  }
  g.domain = closure;

  auto vs = g.distinct_values();
  Rational base = vs.front();
  std::vector<Rational> out(static_cast<size_t>(n), base);
  for (size_t i = 0; i + 1 < vs.size(); ++i) {
    PointSet A = closed_dec_hull(ps, g.sublevel(vs[i]));
    PointSet B = closed_inc_hull(ps, g.superlevel(vs[i + 1]));
    MonotoneFn h = urysohn(ps, A, B);
    Rational gap = vs[i + 1] - vs[i];
    for (int x = 0; x < n; ++x) out[x] += gap * h.at(x);
  }
  MonotoneFn F{std::move(out)};
  for (auto& [x, v] : f.values)
    if (F.at(x) != v) throw InternalError("extension failed to restrict to f");
  return F;
}

// Extension with pinned level sets: build f' = (0 on A, f on K, 1 on B) over
// K' = A ∪ K ∪ B, validate it, and extend.  Requires a closed preorder on a
// finite space (hence a normally preordered one).
inline MonotoneFn extend_with_pinning(const PreorderedSpace& ps, const PartialFn& f,
                                      const PointSet& A, const PointSet& B) {
  detail::require_closed_monotone_pair(ps, A, B);
  if (!is_closed_preorder(ps))
    throw InvalidInput("extend_with_pinning requires a closed preordered space");
  detail::require_continuous_isotone_on_subspace(ps, f);
  for (int x : (A & f.domain).members())
    if (f.values.at(x) != 0) throw InvalidInput("f must vanish on A ∩ K");
  for (int x : (B & f.domain).members())
    if (f.values.at(x) != 1) throw InvalidInput("f must be one on B ∩ K");

  PartialFn fp;
  fp.domain = A | f.domain | B;
  for (int x : A.members()) fp.values[x] = Rational(0);
  for (auto& [x, v] : f.values) fp.values[x] = v;
  for (int x : B.members()) fp.values[x] = Rational(1);

  if (fp.domain.empty()) return MonotoneFn::constant(ps.n(), rat(1, 2));
  PreorderedSubspace sub = preordered_subspace(ps, fp.domain);
  std::vector<Rational> vals;
  for (int amb : sub.to_ambient) vals.push_back(fp.values.at(amb));
  MonotoneFn fp_sub{std::move(vals)};
  if (!is_isotone(sub.space, fp_sub))
    throw InvalidInput("pinned function is not isotone on A ∪ K ∪ B");
  if (!is_continuous(sub.space, fp_sub))
    throw InternalError("pinned function lost continuity on A ∪ K ∪ B");

  MonotoneFn F = extend_isotone(ps, fp);
  if (!A.subset_of(F.level_set(Rational(0))) || !B.subset_of(F.level_set(Rational(1))))
    throw InternalError("pinning lost in extension");
  return F;
}

// Exact-level-set separation: continuous isotone f with f^-1(0) = A and
// f^-1(1) = B.  Construction: one-sided zero/one functions built from every
// open set whose monotone closed hull avoids the target (weighted into a
// single function), merged through alpha.  On a non-regular space falls back
// to the component-level feasibility construction.
inline MonotoneFn perfectly_separate(const PreorderedSpace& ps, const PointSet& A,
                                     const PointSet& B) {
  detail::require_closed_monotone_pair(ps, A, B);
  const int n = ps.n();
  SpaceAnalysis a = analyze(ps);
  Classification flags = ps.flags ? *ps.flags : classify(ps);

  if (!flags.regular) {
    // Per-pair feasibility: both sets must be unions of quasi-components.
    if (!a.is_component_union(A) || !a.is_component_union(B))
      throw NotSeparable("no exact-level-set isotone separator exists");
    // Condense the component digraph and grade the middle components.
    const int m = a.component_count;
    std::vector<std::vector<int>> succ(m);
    for (int x = 0; x < n; ++x)
      for (int y : ps.order.up(x).members())
        if (a.component[x] != a.component[y]) succ[a.component[x]].push_back(a.component[y]);
    std::vector<int> kind(m, 0);  // 0 middle, -1 in A, +1 in B
    for (int c = 0; c < m; ++c) {
      if (a.component_sets[c].intersects(A)) kind[c] = -1;
      if (a.component_sets[c].intersects(B)) kind[c] = 1;
    }
    // Grade middle components monotonically along the condensed digraph;
    // grades saturate at m, so cycles settle on equal grades.
    std::vector<int> grade(m, 0);
    bool changed = true;
    while (changed) {
      changed = false;
      for (int c = 0; c < m; ++c)
        if (kind[c] == 0)
          for (int d : succ[c])
            if (kind[d] == 0 && grade[d] < std::min(grade[c] + 1, m)) {
              grade[d] = std::min(grade[c] + 1, m);
              changed = true;
            }
    }
    int levels = 1;
    for (int c = 0; c < m; ++c)
      if (kind[c] == 0) levels = std::max(levels, grade[c] + 1);
    std::vector<Rational> vals(static_cast<size_t>(n));
    for (int x = 0; x < n; ++x) {
      int c = a.component[x];
      if (kind[c] < 0)
        vals[x] = Rational(0);
      else if (kind[c] > 0)
        vals[x] = Rational(1);
      else
        vals[x] = rat(grade[c] + 1, levels + 1);
    }
    MonotoneFn f{std::move(vals)};
    if (!is_isotone(ps, f) || !is_continuous(ps, f) ||
        f.level_set(Rational(0)) != A || f.level_set(Rational(1)) != B)
      throw InternalError("feasible exact separation failed to construct");
    return f;
  }

  // Zero side: g continuous isotone with g^-1(0) = A exactly.
  auto zero_side = [&](const PointSet& S) -> MonotoneFn {
    if (ps.topology.is_open(S)) {
      std::vector<Rational> vals(static_cast<size_t>(n), Rational(1));
      for (int x : S.members()) vals[x] = Rational(0);
      return MonotoneFn(std::move(vals));
    }
    std::vector<MonotoneFn> parts;
    for (const auto& U : ps.topology.opens()) {
      PointSet hull = closed_inc_hull(ps, U);
      if (!hull.intersects(S)) parts.push_back(urysohn(ps, S, hull));
    }
    if (parts.empty()) throw InternalError("no qualifying basis opens for the zero side");
    return weighted_sum(parts);
  };
  auto one_side = [&](const PointSet& S) -> MonotoneFn {
    if (ps.topology.is_open(S)) {
      std::vector<Rational> vals(static_cast<size_t>(n), Rational(0));
      for (int x : S.members()) vals[x] = Rational(1);
      return MonotoneFn(std::move(vals));
    }
    std::vector<MonotoneFn> parts;
    for (const auto& V : ps.topology.opens()) {
      PointSet hull = closed_dec_hull(ps, V);
      if (!hull.intersects(S)) parts.push_back(urysohn(ps, hull, S));
    }
    if (parts.empty()) throw InternalError("no qualifying basis opens for the one side");
    return weighted_sum(parts);
  };

  MonotoneFn g = zero_side(A);
  MonotoneFn h = one_side(B);
  MonotoneFn f = combine_alpha(ps, g, h);
  if (f.level_set(Rational(0)) != A || f.level_set(Rational(1)) != B)
    throw InternalError("exact level sets lost in the alpha merge");
  return f;
}

}  // namespace tps
