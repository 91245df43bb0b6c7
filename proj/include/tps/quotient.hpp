#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "tps/classify.hpp"
#include "tps/errors.hpp"
#include "tps/preorder.hpp"
#include "tps/topology.hpp"

namespace tps {

// Equivalence classes of x ~ y (x <= y and y <= x), ordered by smallest
// member index; class ids are the sorted member names joined with '+'.
inline std::vector<PointSet> indifference_classes(const PreorderedSpace& ps) {
  std::vector<PointSet> classes;
  std::vector<bool> seen(ps.n(), false);
  for (int x = 0; x < ps.n(); ++x) {
    if (seen[x]) continue;
    PointSet cls = ps.order.up(x) & ps.order.down(x);
    for (int y : cls.members()) seen[y] = true;
    classes.push_back(cls);
  }
  return classes;
}

inline std::string class_id(const FiniteTopology& t, const PointSet& cls) {
  std::vector<std::string> names = t.set_names(cls);
  std::sort(names.begin(), names.end());
  std::string out;
  for (size_t i = 0; i < names.size(); ++i) {
    if (i) out += "+";
    out += names[i];
  }
  return out;
}

struct QuotientPresentation {
  std::vector<PointSet> classes;   // over ambient indices
  std::vector<int> projection;     // ambient point -> class index
  PreorderedSpace space;           // quotient topology + order
};

// Quotient by the indifference relation: quotient topology (preimage-open
// criterion) plus [x] <= [y] iff x <= y for some representatives.  The
// quotient preorder is an order; the projection is continuous and
// order-preserving — both are verified, not assumed.
inline QuotientPresentation quotient_space(const PreorderedSpace& ps) {
  auto classes = indifference_classes(ps);
  const int m = static_cast<int>(classes.size());
  std::vector<int> proj(ps.n(), -1);
  std::vector<std::string> ids;
  for (int c = 0; c < m; ++c) {
    for (int x : classes[c].members()) proj[x] = c;
    ids.push_back(class_id(ps.topology, classes[c]));
  }

  FiniteTopology qt = quotient_topology(ps.topology, ids, proj);

  std::vector<std::pair<int, int>> edges;
  for (int x = 0; x < ps.n(); ++x)
    for (int y : ps.order.up(x).members())
      if (proj[x] != proj[y]) edges.emplace_back(proj[x], proj[y]);
  Preorder qo = Preorder::from_edges(m, edges);

  if (!qo.is_antisymmetric())
    throw InternalError("indifference quotient produced a non-antisymmetric order");
  for (int x = 0; x < ps.n(); ++x)
    for (int y = 0; y < ps.n(); ++y)
      if (ps.order.leq(x, y) != qo.leq(proj[x], proj[y]))
        throw InternalError("quotient order disagrees with the projected preorder");
  for (const auto& o : qt.opens()) {
    PointSet pre;
    for (int x = 0; x < ps.n(); ++x)
      if (o.contains(proj[x])) pre.add(x);
    if (!ps.topology.is_open(pre))
      throw InternalError("quotient projection is not continuous");
  }

  return QuotientPresentation{std::move(classes), std::move(proj),
                              PreorderedSpace(std::move(qt), std::move(qo))};
}

// Remark-style equivalence report: the three separation flags computed
// independently on E and on E/~, plus the bijection between monotone
// open/closed sets of E and of the quotient.
struct RemarkReport {
  bool ambient_semiclosed, quotient_semiclosed;
  bool ambient_regular, quotient_regular;
  bool ambient_normal, quotient_normal;
  bool monotone_open_bijection;
  bool monotone_closed_bijection;

  bool semiclosed_agree() const { return ambient_semiclosed == quotient_semiclosed; }
  bool regular_agree() const { return ambient_regular == quotient_regular; }
  bool normal_agree() const { return ambient_normal == quotient_normal; }
  bool all_hold() const {
    return semiclosed_agree() && regular_agree() && normal_agree() &&
           monotone_open_bijection && monotone_closed_bijection;
  }
};

inline RemarkReport check_remark_equivalences(const PreorderedSpace& ps) {
  QuotientPresentation q = quotient_space(ps);
  Classification ca = classify(ps);
  Classification cq = classify(q.space);
  RemarkReport r{};
  r.ambient_semiclosed = ca.semiclosed;
  r.quotient_semiclosed = cq.semiclosed;
  r.ambient_regular = ca.regular;
  r.quotient_regular = cq.regular;
  r.ambient_normal = ca.normal;
  r.quotient_normal = cq.normal;

  auto project = [&](const PointSet& s) {
    PointSet out;
    for (int x : s.members()) out.add(q.projection[x]);
    return out;
  };
  auto preimage = [&](const PointSet& s) {
    PointSet out;
    for (int x = 0; x < ps.n(); ++x)
      if (s.contains(q.projection[x])) out.add(x);
    return out;
  };

  SpaceAnalysis aa = analyze(ps);
  SpaceAnalysis qa = analyze(q.space);

  // Monotone sets are saturated, so projection/preimage must biject the
  // monotone opens (and closeds) of the two spaces.
  auto families_biject = [&](const std::vector<PointSet>& ambient,
                             const std::vector<PointSet>& quotient) {
    for (const auto& s : ambient) {
      PointSet img = project(s);
      if (preimage(img) != s) return false;
      if (std::find(quotient.begin(), quotient.end(), img) == quotient.end()) return false;
    }
    for (const auto& t : quotient) {
      PointSet pre = preimage(t);
      if (std::find(ambient.begin(), ambient.end(), pre) == ambient.end()) return false;
    }
    return true;
  };
  r.monotone_open_bijection =
      families_biject(aa.open_dec, qa.open_dec) && families_biject(aa.open_inc, qa.open_inc);
  r.monotone_closed_bijection = families_biject(aa.closed_dec, qa.closed_dec) &&
                                families_biject(aa.closed_inc, qa.closed_inc);
  return r;
}

struct QuotientClosedReport {
  bool quotient_closed_preorder;
  bool quotient_antisymmetric;
  bool holds() const { return quotient_closed_preorder && quotient_antisymmetric; }
};

inline QuotientClosedReport check_quotient_closed(const PreorderedSpace& ps) {
  QuotientPresentation q = quotient_space(ps);
  return QuotientClosedReport{is_closed_preorder(q.space), q.space.order.is_antisymmetric()};
}

// Quotient of a bare topology along an arbitrary total surjection, plus an
// equality check against a candidate topology (finite instances of the
// disjoint-union/quotient reconstruction).
inline FiniteTopology quotient_by_map(const FiniteTopology& t,
                                      const std::vector<std::string>& target_points,
                                      const std::vector<int>& map) {
  return quotient_topology(t, target_points, map);
}

inline bool quotient_matches(const FiniteTopology& t,
                             const std::vector<std::string>& target_points,
                             const std::vector<int>& map, const FiniteTopology& candidate) {
  FiniteTopology q = quotient_by_map(t, target_points, map);
  return q == candidate;
}

}  // namespace tps
