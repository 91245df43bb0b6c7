#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tps/errors.hpp"
#include "tps/pointset.hpp"
#include "tps/topology.hpp"

namespace tps {

// Reflexive transitive relation over point indices.  succ(x) = i(x) rows,
// pred(x) = d(x) rows; both kept for O(1) hull queries.
class Preorder {
 public:
  explicit Preorder(int n) : n_(n), succ_(n), pred_(n) {
    for (int i = 0; i < n; ++i) {
      succ_[i].add(i);
      pred_[i].add(i);
    }
  }

  static Preorder from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    Preorder p(n);
    for (auto [a, b] : edges) {
      if (a < 0 || a >= n || b < 0 || b >= n)
        throw InvalidSpace("order edge references unknown point");
      p.succ_[a].add(b);
    }
    // Transitive closure: propagate rows until stable.
    bool changed = true;
    while (changed) {
      changed = false;
      for (int x = 0; x < n; ++x) {
        PointSet row = p.succ_[x];
        for (int y : p.succ_[x].members()) row |= p.succ_[y];
        if (row != p.succ_[x]) {
          p.succ_[x] = row;
          changed = true;
        }
      }
    }
    for (int x = 0; x < n; ++x)
      for (int y : p.succ_[x].members()) p.pred_[y].add(x);
    return p;
  }

  int n() const { return n_; }
  bool leq(int x, int y) const { return succ_[x].contains(y); }
  bool equivalent(int x, int y) const { return leq(x, y) && leq(y, x); }
  bool strictly_less(int x, int y) const { return leq(x, y) && !leq(y, x); }

  // i(x) and d(x).
  const PointSet& up(int x) const { return succ_[x]; }
  const PointSet& down(int x) const { return pred_[x]; }

  PointSet inc_hull(const PointSet& s) const {
    PointSet out;
    for (int x : s.members()) out |= succ_[x];
    return out;
  }
  PointSet dec_hull(const PointSet& s) const {
    PointSet out;
    for (int x : s.members()) out |= pred_[x];
    return out;
  }

  bool is_increasing(const PointSet& s) const { return inc_hull(s) == s; }
  bool is_decreasing(const PointSet& s) const { return dec_hull(s) == s; }

  bool is_antisymmetric() const {
    for (int x = 0; x < n_; ++x)
      for (int y : succ_[x].members())
        if (y != x && succ_[y].contains(x)) return false;
    return true;
  }

  bool operator==(const Preorder& o) const { return succ_ == o.succ_; }

 private:
  int n_;
  std::vector<PointSet> succ_, pred_;
};

inline Preorder make_preorder(const FiniteTopology& t,
                              const std::vector<std::pair<std::string, std::string>>& edges) {
  std::vector<std::pair<int, int>> idx_edges;
  idx_edges.reserve(edges.size());
  for (const auto& [a, b] : edges) idx_edges.emplace_back(t.index_of(a), t.index_of(b));
  return Preorder::from_edges(t.n(), idx_edges);
}

struct Classification {
  bool semiclosed = false;
  bool closed = false;
  bool convex = false;
  bool regular = false;
  bool normal = false;
  bool perfectly_normal = false;

  bool operator==(const Classification&) const = default;

  // normally preordered => regularly preordered => closed preordered =>
  // semiclosed preordered; perfectly normally preordered => normally.
  bool chain_holds() const {
    return (!perfectly_normal || normal) && (!normal || regular) &&
           (!regular || closed) && (!closed || semiclosed);
  }
};

// A finite topology with a preorder over the same points.  flags, when
// present, must equal a fresh classification (tested property).
struct PreorderedSpace {
  FiniteTopology topology;
  Preorder order;
  std::optional<Classification> flags;

  PreorderedSpace(FiniteTopology t, Preorder o, std::optional<Classification> f = {})
      : topology(std::move(t)), order(std::move(o)), flags(std::move(f)) {
    if (topology.n() != order.n())
      throw InvalidSpace("topology and preorder disagree on the point set");
  }

  int n() const { return topology.n(); }
};

// i(S) / d(S).
inline PointSet inc_hull(const PreorderedSpace& ps, const PointSet& s) {
  return ps.order.inc_hull(s);
}
inline PointSet dec_hull(const PreorderedSpace& ps, const PointSet& s) {
  return ps.order.dec_hull(s);
}

// I(S) / D(S): least fixpoint of alternating topological closure and hull.
// The iterate grows inside a finite lattice, so it terminates; the result is
// closed, monotone, and contained in every closed monotone superset.
inline PointSet closed_inc_hull(const FiniteTopology& tp, const Preorder& ord, PointSet s) {
  for (;;) {
    PointSet next = ord.inc_hull(tp.closure(s));
    if (next == s) return s;
    s = next;
  }
}
inline PointSet closed_dec_hull(const FiniteTopology& tp, const Preorder& ord, PointSet s) {
  for (;;) {
    PointSet next = ord.dec_hull(tp.closure(s));
    if (next == s) return s;
    s = next;
  }
}
inline PointSet closed_inc_hull(const PreorderedSpace& ps, PointSet s) {
  return closed_inc_hull(ps.topology, ps.order, std::move(s));
}
inline PointSet closed_dec_hull(const PreorderedSpace& ps, PointSet s) {
  return closed_dec_hull(ps.topology, ps.order, std::move(s));
}

// Least open monotone supersets, computed pointwise without materializing
// the monotone open families: alternate "union of minimal neighborhoods"
// (open hull) with the order hull to a fixpoint.
inline PointSet min_open_dec_hull(const FiniteTopology& tp, const Preorder& ord, PointSet s) {
  for (;;) {
    PointSet open_hull;
    for (int y : s.members()) open_hull |= tp.minimal_neighborhood(y);
    PointSet next = ord.dec_hull(open_hull | s);
    if (next == s) return s;
    s = next;
  }
}
inline PointSet min_open_inc_hull(const FiniteTopology& tp, const Preorder& ord, PointSet s) {
  for (;;) {
    PointSet open_hull;
    for (int y : s.members()) open_hull |= tp.minimal_neighborhood(y);
    PointSet next = ord.inc_hull(open_hull | s);
    if (next == s) return s;
    s = next;
  }
}

// Induced topology + induced order on S.
struct PreorderedSubspace {
  PreorderedSpace space;
  std::vector<int> to_ambient;
};

inline PreorderedSubspace preordered_subspace(const PreorderedSpace& ps, const PointSet& s) {
  Subspace sub = subspace_with_map(ps.topology, s);
  const int m = static_cast<int>(sub.to_ambient.size());
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (ps.order.leq(sub.to_ambient[i], sub.to_ambient[j])) edges.emplace_back(i, j);
  Preorder induced = Preorder::from_edges(m, edges);
  return PreorderedSubspace{PreorderedSpace(std::move(sub.topology), std::move(induced)),
                            std::move(sub.to_ambient)};
}

}  // namespace tps
