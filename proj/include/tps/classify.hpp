#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tps/errors.hpp"
#include "tps/preorder.hpp"
#include "tps/topology.hpp"

namespace tps {

enum class Direction { kDecreasing, kIncreasing };

// All open sets that are increasing (resp. decreasing).
inline std::vector<PointSet> enumerate_monotone_opens(const PreorderedSpace& ps,
                                                      Direction dir) {
  std::vector<PointSet> out;
  for (const auto& o : ps.topology.opens()) {
    bool keep = dir == Direction::kDecreasing ? ps.order.is_decreasing(o)
                                              : ps.order.is_increasing(o);
    if (keep) out.push_back(o);
  }
  return out;
}

// Per-space derived data shared by the classification flags and by the
// separation constructions.  Monotone open families are closed under union
// and intersection, so each point has a smallest monotone open neighborhood
// and each set S a smallest monotone open superset (the union over S).
struct SpaceAnalysis {
  std::vector<PointSet> open_dec, open_inc;    // monotone opens
  std::vector<PointSet> closed_dec, closed_inc;  // complements of the above
  std::vector<PointSet> min_open_dec, min_open_inc;  // per point
  std::vector<int> component;  // specialization quasi-component id per point
  int component_count = 0;
  std::vector<PointSet> component_sets;

  PointSet min_open_dec_of(const PointSet& s) const {
    PointSet out;
    for (int x : s.members()) out |= min_open_dec[x];
    return out;
  }
  PointSet min_open_inc_of(const PointSet& s) const {
    PointSet out;
    for (int x : s.members()) out |= min_open_inc[x];
    return out;
  }
  bool is_component_union(const PointSet& s) const {
    for (const auto& c : component_sets) {
      PointSet both = s & c;
      if (!both.empty() && both != c) return false;
    }
    return true;
  }
};

inline SpaceAnalysis analyze(const FiniteTopology& tp, const Preorder& ord) {
  SpaceAnalysis a;
  const int n = tp.n();
  for (const auto& o : tp.opens()) {
    if (ord.is_decreasing(o)) a.open_dec.push_back(o);
    if (ord.is_increasing(o)) a.open_inc.push_back(o);
  }
  for (const auto& o : a.open_inc) a.closed_dec.push_back(o.complement(n));
  for (const auto& o : a.open_dec) a.closed_inc.push_back(o.complement(n));
  std::sort(a.closed_dec.begin(), a.closed_dec.end());
  std::sort(a.closed_inc.begin(), a.closed_inc.end());

  a.min_open_dec.assign(n, tp.full_set());
  a.min_open_inc.assign(n, tp.full_set());
  for (const auto& o : a.open_dec)
    for (int x = 0; x < n; ++x)
      if (o.contains(x)) a.min_open_dec[x] &= o;
  for (const auto& o : a.open_inc)
    for (int x = 0; x < n; ++x)
      if (o.contains(x)) a.min_open_inc[x] &= o;

  // Quasi-components: symmetric-transitive closure of "y lies in every open
  // around x" (y in U_x).  Union-find over those edges.
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int x = 0; x < n; ++x)
    for (int y : tp.minimal_neighborhood(x).members())
      parent[find(x)] = find(y);
  a.component.assign(n, -1);
  std::vector<int> root_id(n, -1);
  for (int x = 0; x < n; ++x) {
    int r = find(x);
    if (root_id[r] < 0) {
      root_id[r] = a.component_count++;
      a.component_sets.push_back(PointSet::empty_set());
    }
    a.component[x] = root_id[r];
    a.component_sets[a.component[x]].add(x);
  }
  return a;
}

inline SpaceAnalysis analyze(const PreorderedSpace& ps) {
  return analyze(ps.topology, ps.order);
}

// Graph-closedness via rectangle witnesses: for every x != y with x not<= y
// there must be opens U around x and V around y such that no u in U, v in V
// has u <= v.  On a finite space the minimal neighborhoods are the strongest
// candidate rectangle, so they decide the matter.
inline bool is_closed_preorder(const FiniteTopology& tp, const Preorder& ord) {
  const int n = tp.n();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (ord.leq(x, y)) continue;
      bool separated = true;
      for (int u : tp.minimal_neighborhood(x).members()) {
        if (ord.up(u).intersects(tp.minimal_neighborhood(y))) {
          separated = false;
          break;
        }
      }
      if (!separated) return false;
    }
  return true;
}

inline bool is_closed_preorder(const PreorderedSpace& ps) {
  return is_closed_preorder(ps.topology, ps.order);
}

namespace detail {

inline bool semiclosed_flag(const FiniteTopology& tp, const Preorder& ord,
                            int* witness = nullptr) {
  for (int x = 0; x < tp.n(); ++x) {
    if (tp.closure(ord.up(x)) != ord.up(x) || tp.closure(ord.down(x)) != ord.down(x)) {
      if (witness) *witness = x;
      return false;
    }
  }
  return true;
}

inline bool semiclosed_flag(const PreorderedSpace& ps, int* witness = nullptr) {
  return semiclosed_flag(ps.topology, ps.order, witness);
}

}  // namespace detail

// Pointwise classifier: every flag decided from per-point minimal hulls, no
// open-family enumeration.  Each criterion is an exact reformulation of the
// definitional one because monotone open families are union/intersection
// closed and every closed monotone set is the union of the pointwise closed
// monotone hulls of its members; equivalence with classify() is enforced by
// the test suite on exhaustive small-n enumerations.  This is what makes the
// exhaustive space search tractable.
class FastClassifier {
 public:
  FastClassifier(const FiniteTopology& tp, const Preorder& ord) : tp_(tp), ord_(ord) {
    const int n = tp.n();
    mod_.resize(n);
    moi_.resize(n);
    d1_.resize(n);
    i1_.resize(n);
    for (int x = 0; x < n; ++x) {
      mod_[x] = min_open_dec_hull(tp, ord, PointSet::single(x));
      moi_[x] = min_open_inc_hull(tp, ord, PointSet::single(x));
      d1_[x] = closed_dec_hull(tp, ord, PointSet::single(x));
      i1_[x] = closed_inc_hull(tp, ord, PointSet::single(x));
    }
    comp_.resize(n);
    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (int x = 0; x < n; ++x)
      for (int y : tp.minimal_neighborhood(x).members()) parent[find(x)] = find(y);
    for (int x = 0; x < n; ++x) comp_[x] = find(x);
  }

  bool semiclosed() const { return detail::semiclosed_flag(tp_, ord_); }
  bool closed() const { return is_closed_preorder(tp_, ord_); }

  bool convex() const {
    for (int x = 0; x < tp_.n(); ++x)
      if (!(mod_[x] & moi_[x]).subset_of(tp_.minimal_neighborhood(x))) return false;
    return true;
  }

  // A disjoint closed-monotone pair containing (x,y) exists iff the pointwise
  // closed hulls are disjoint; a separator for any such pair exists iff the
  // pointwise open hulls are disjoint.
  bool normal() const {
    if (!semiclosed()) return false;
    const int n = tp_.n();
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (!d1_[x].intersects(i1_[y]) && mod_[x].intersects(moi_[y])) return false;
    return true;
  }

  bool regular() const {
    if (!semiclosed()) return false;
    const int n = tp_.n();
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        if (!i1_[y].contains(x) && mod_[x].intersects(moi_[y])) return false;
        if (!d1_[y].contains(x) && moi_[x].intersects(mod_[y])) return false;
      }
    return true;
  }

  // Every closed monotone set is a union of pointwise hulls, so all of them
  // are quasi-component saturated iff each pointwise hull is.
  bool perfectly_normal() const {
    if (!semiclosed()) return false;
    const int n = tp_.n();
    for (int x = 0; x < n; ++x) {
      for (int w : d1_[x].members())
        if (!component_of(w).subset_of(d1_[x])) return false;
      for (int w : i1_[x].members())
        if (!component_of(w).subset_of(i1_[x])) return false;
    }
    return true;
  }

  Classification all() const {
    Classification c;
    c.semiclosed = semiclosed();
    c.closed = closed();
    c.convex = convex();
    c.regular = regular();
    c.normal = normal();
    c.perfectly_normal = perfectly_normal();
    if (!c.chain_holds())
      throw InternalError("pointwise classification implication chain violated");
    return c;
  }

 private:
  PointSet component_of(int w) const {
    PointSet s;
    for (int v = 0; v < tp_.n(); ++v)
      if (comp_[v] == comp_[w]) s.add(v);
    return s;
  }

  const FiniteTopology& tp_;
  const Preorder& ord_;
  std::vector<PointSet> mod_, moi_, d1_, i1_;
  std::vector<int> comp_;
};

inline Classification classify_fast(const FiniteTopology& tp, const Preorder& ord) {
  return FastClassifier(tp, ord).all();
}

// Oracle route: materialize product(T,T) and test that the graph of the
// preorder is a closed subset.  Throws TooLarge when the rectangle-generated
// family blows past the cap.
inline bool is_closed_preorder_via_product(const PreorderedSpace& ps) {
  FiniteTopology prod = product(ps.topology, ps.topology);
  const int n = ps.n();
  PointSet graph;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (ps.order.leq(x, y)) graph.add(x * n + y);
  return prod.closure(graph) == graph;
}

namespace detail {

// Disjoint open monotone supersets of (A,B) exist iff the smallest such pair
// is disjoint: every open decreasing superset of A contains the union of the
// per-point minimal open decreasing sets, and dually.
inline bool pair_separable(const SpaceAnalysis& a, const PointSet& A, const PointSet& B) {
  return !a.min_open_dec_of(A).intersects(a.min_open_inc_of(B));
}

inline bool normal_flag(const FiniteTopology& tp, const Preorder& ord,
                        const SpaceAnalysis& a,
                        std::pair<PointSet, PointSet>* witness = nullptr) {
  if (!semiclosed_flag(tp, ord)) return false;
  for (const auto& A : a.closed_dec)
    for (const auto& B : a.closed_inc) {
      if (A.intersects(B)) continue;
      if (!pair_separable(a, A, B)) {
        if (witness) *witness = {A, B};
        return false;
      }
    }
  return true;
}

inline bool regular_flag(const FiniteTopology& tp, const Preorder& ord,
                         const SpaceAnalysis& a,
                         std::pair<int, PointSet>* witness = nullptr) {
  if (!semiclosed_flag(tp, ord)) return false;
  const int n = tp.n();
  for (int x = 0; x < n; ++x) {
    for (const auto& B : a.closed_inc) {
      if (B.contains(x)) continue;
      if (a.min_open_dec[x].intersects(a.min_open_inc_of(B))) {
        if (witness) *witness = {x, B};
        return false;
      }
    }
    for (const auto& A : a.closed_dec) {
      if (A.contains(x)) continue;
      if (a.min_open_inc[x].intersects(a.min_open_dec_of(A))) {
        if (witness) *witness = {x, A};
        return false;
      }
    }
  }
  return true;
}

inline bool convex_flag(const FiniteTopology& tp, const Preorder& ord,
                        const SpaceAnalysis& a, int* witness = nullptr) {
  (void)ord;
  for (int x = 0; x < tp.n(); ++x) {
    PointSet meet = a.min_open_dec[x] & a.min_open_inc[x];
    if (!meet.subset_of(tp.minimal_neighborhood(x))) {
      if (witness) *witness = x;
      return false;
    }
  }
  return true;
}

// Continuous real functions on a finite space are exactly those constant on
// specialization quasi-components, so an exact-level-set isotone separator
// for (A,B) exists iff both sets are unions of quasi-components; component
// down/up-closure is then automatic from monotonicity.  Because the empty set
// partners with everything, the pair quantification collapses to a per-set
// test over all closed monotone sets.
inline bool perfectly_normal_flag(const FiniteTopology& tp, const Preorder& ord,
                                  const SpaceAnalysis& a,
                                  std::pair<PointSet, bool>* witness = nullptr) {
  if (!semiclosed_flag(tp, ord)) return false;
  for (const auto& A : a.closed_dec)
    if (!a.is_component_union(A)) {
      if (witness) *witness = {A, false};
      return false;
    }
  for (const auto& B : a.closed_inc)
    if (!a.is_component_union(B)) {
      if (witness) *witness = {B, true};
      return false;
    }
  return true;
}

}  // namespace detail

inline Classification classify(const FiniteTopology& tp, const Preorder& ord) {
  SpaceAnalysis a = analyze(tp, ord);
  Classification c;
  c.semiclosed = detail::semiclosed_flag(tp, ord);
  c.closed = is_closed_preorder(tp, ord);
  c.convex = detail::convex_flag(tp, ord, a);
  c.normal = detail::normal_flag(tp, ord, a);
  c.regular = detail::regular_flag(tp, ord, a);
  c.perfectly_normal = detail::perfectly_normal_flag(tp, ord, a);
  if (!c.chain_holds())
    throw InternalError("classification implication chain violated");
  return c;
}

inline Classification classify(const PreorderedSpace& ps) {
  return classify(ps.topology, ps.order);
}

inline PreorderedSpace with_classification(PreorderedSpace ps) {
  ps.flags = classify(ps);
  return ps;
}

// Prop-style subspace inheritance report.
struct SubspaceReport {
  bool ambient_semiclosed = false, sub_semiclosed = false;
  bool ambient_closed = false, sub_closed = false;
  bool semiclosed_inherited = false;  // ambient flag implies subspace flag
  bool closed_inherited = false;
  // Every closed decreasing A of the subspace satisfies A = d(A) ∩ S computed
  // in the ambient space, and dually.
  bool hull_identity_dec = false, hull_identity_inc = false;
  // Every open monotone set of the subspace extends to an open monotone set
  // of the ambient space (preordered-subspace property).
  bool monotone_opens_extend = false;
};

inline SubspaceReport check_subspace_inheritance(const PreorderedSpace& ps,
                                                 const PointSet& s) {
  SubspaceReport r;
  PreorderedSubspace sub = preordered_subspace(ps, s);
  const auto& sp = sub.space;
  r.ambient_semiclosed = detail::semiclosed_flag(ps);
  r.sub_semiclosed = detail::semiclosed_flag(sp);
  r.ambient_closed = is_closed_preorder(ps);
  r.sub_closed = is_closed_preorder(sp);
  r.semiclosed_inherited = !r.ambient_semiclosed || r.sub_semiclosed;
  r.closed_inherited = !r.ambient_closed || r.sub_closed;

  SpaceAnalysis sa = analyze(sp);
  auto lift = [&](const PointSet& subset) {
    PointSet out;
    for (int i : subset.members()) out.add(sub.to_ambient[i]);
    return out;
  };

  r.hull_identity_dec = true;
  for (const auto& A : sa.closed_dec) {
    PointSet amb = lift(A);
    if ((ps.order.dec_hull(amb) & s) != amb) {
      r.hull_identity_dec = false;
      break;
    }
  }
  r.hull_identity_inc = true;
  for (const auto& B : sa.closed_inc) {
    PointSet amb = lift(B);
    if ((ps.order.inc_hull(amb) & s) != amb) {
      r.hull_identity_inc = false;
      break;
    }
  }

  SpaceAnalysis aa = analyze(ps);
  auto extends = [&](const PointSet& m, const std::vector<PointSet>& ambient_family) {
    PointSet amb = lift(m);
    for (const auto& o : ambient_family)
      if ((o & s) == amb) return true;
    return false;
  };
  r.monotone_opens_extend = true;
  for (const auto& m : sa.open_dec)
    if (!extends(m, aa.open_dec)) {
      r.monotone_opens_extend = false;
      break;
    }
  if (r.monotone_opens_extend)
    for (const auto& m : sa.open_inc)
      if (!extends(m, aa.open_inc)) {
        r.monotone_opens_extend = false;
        break;
      }
  return r;
}

// Witness payloads for cmd_check's report of false flags.
struct ClassificationWitnesses {
  std::optional<int> semiclosed_point;
  std::optional<std::pair<int, int>> closed_pair;
  std::optional<int> convex_point;
  std::optional<std::pair<PointSet, PointSet>> normal_pair;
  std::optional<std::pair<int, PointSet>> regular_pair;
  std::optional<std::pair<PointSet, bool>> perfect_set;  // set + is-increasing
};

inline ClassificationWitnesses classification_witnesses(const PreorderedSpace& ps,
                                                        const Classification& c) {
  ClassificationWitnesses w;
  SpaceAnalysis a = analyze(ps);
  if (!c.semiclosed) {
    int x = -1;
    detail::semiclosed_flag(ps, &x);
    w.semiclosed_point = x;
  }
  if (!c.closed) {
    for (int x = 0; x < ps.n() && !w.closed_pair; ++x)
      for (int y = 0; y < ps.n() && !w.closed_pair; ++y) {
        if (ps.order.leq(x, y)) continue;
        for (int u : ps.topology.minimal_neighborhood(x).members())
          if (ps.order.up(u).intersects(ps.topology.minimal_neighborhood(y))) {
            w.closed_pair = {x, y};
            break;
          }
      }
  }
  if (!c.convex) {
    int x = -1;
    detail::convex_flag(ps.topology, ps.order, a, &x);
    w.convex_point = x;
  }
  if (!c.normal && c.semiclosed) {
    std::pair<PointSet, PointSet> p;
    detail::normal_flag(ps.topology, ps.order, a, &p);
    w.normal_pair = p;
  }
  if (!c.regular && c.semiclosed) {
    std::pair<int, PointSet> p;
    detail::regular_flag(ps.topology, ps.order, a, &p);
    w.regular_pair = p;
  }
  if (!c.perfectly_normal && c.semiclosed) {
    std::pair<PointSet, bool> p;
    if (!detail::perfectly_normal_flag(ps.topology, ps.order, a, &p)) w.perfect_set = p;
  }
  return w;
}

}  // namespace tps
