#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "tps/errors.hpp"
#include "tps/pointset.hpp"

namespace tps {

// Size guards.  Ambient spaces are the ones users construct directly; derived
// spaces (products, disjoint unions) may be larger but their open families are
// capped.  TPS_MAX_POINTS can lower the ambient guard, never raise it past 16.
inline int ambient_point_cap() {
  static const int cap = [] {
    int v = 16;
    if (const char* e = std::getenv("TPS_MAX_POINTS")) {
      int parsed = std::atoi(e);
      if (parsed >= 1 && parsed <= 16) v = parsed;
    }
    return v;
  }();
  return cap;
}

constexpr int kDerivedPointCap = 256;
constexpr size_t kDerivedFamilyCap = size_t{1} << 20;

inline std::vector<std::string> default_point_names(int n) {
  std::vector<std::string> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) pts.push_back("p" + std::to_string(i));
  return pts;
}

namespace detail {

// A finite topology is exactly the family of sets S with: x in S implies
// min_nbhd[x] subset of S.  Enumerating those sets from the minimal
// neighborhoods is how generated topologies are materialized.
inline std::vector<PointSet> upset_family(const std::vector<PointSet>& min_nbhd,
                                          size_t family_cap) {
  const int n = static_cast<int>(min_nbhd.size());
  std::vector<PointSet> out;
  if (n <= 20) {
    for (uint32_t mask = 0; mask < (uint32_t{1} << n); ++mask) {
      PointSet s;
      for (int x = 0; x < n; ++x)
        if ((mask >> x) & 1u) s.add(x);
      bool open = true;
      for (int x = 0; open && x < n; ++x)
        if (s.contains(x) && !min_nbhd[x].subset_of(s)) open = false;
      if (open) {
        out.push_back(s);
        if (out.size() > family_cap) throw TooLarge("open family exceeds cap");
      }
    }
    return out;  // already ascending
  }

  // Large universe: group points with equal minimal neighborhood, topologically
  // order the classes (membership of x forces all of min_nbhd[x]), and walk
  // the up-closed class sets recursively.
  std::vector<int> cls(n, -1);
  std::vector<PointSet> cls_nbhd, cls_points;
  for (int x = 0; x < n; ++x) {
    for (size_t c = 0; c < cls_nbhd.size(); ++c)
      if (cls_nbhd[c] == min_nbhd[x]) {
        cls[x] = static_cast<int>(c);
        break;
      }
    if (cls[x] < 0) {
      cls[x] = static_cast<int>(cls_nbhd.size());
      cls_nbhd.push_back(min_nbhd[x]);
      cls_points.push_back(PointSet::empty_set());
    }
    cls_points[cls[x]].add(x);
  }
  const int m = static_cast<int>(cls_nbhd.size());
  // succ[c] = classes forced by including c (its neighborhood's classes).
  std::vector<std::vector<int>> succ(m);
  std::vector<int> indeg_order(m);
  for (int c = 0; c < m; ++c)
    for (int d = 0; d < m; ++d)
      if (d != c && cls_points[d].intersects(cls_nbhd[c])) succ[c].push_back(d);
  // Order classes so successors come later (neighborhoods shrink along succ).
  std::vector<int> order(m);
  for (int i = 0; i < m; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    int ca = cls_nbhd[a].count(), cb = cls_nbhd[b].count();
    if (ca != cb) return ca > cb;
    return a < b;
  });
  std::vector<char> forced(m, 0), chosen(m, 0);
  std::vector<PointSet>& result = out;
  auto emit = [&] {
    PointSet s;
    for (int c = 0; c < m; ++c)
      if (chosen[c]) s |= cls_points[c];
    result.push_back(s);
    if (result.size() > family_cap) throw TooLarge("open family exceeds cap");
  };
  // Recursive include/exclude over classes in `order`; including a class
  // forces all successors (which appear later in `order`).
  std::vector<std::vector<int>> newly_forced(m);
  std::function<void(int)> walk = [&](int pos) {
    if (pos == m) {
      emit();
      return;
    }
    int c = order[pos];
    if (forced[c]) {
      chosen[c] = 1;
      walk(pos + 1);
      chosen[c] = 0;
      return;
    }
    // exclude
    walk(pos + 1);
    // include: force successors
    chosen[c] = 1;
    newly_forced[c].clear();
    for (int d : succ[c])
      if (!forced[d]) {
        forced[d] = 1;
        newly_forced[c].push_back(d);
      }
    walk(pos + 1);
    for (int d : newly_forced[c]) forced[d] = 0;
    chosen[c] = 0;
  };
  walk(0);
  std::sort(result.begin(), result.end());
  return result;
}

inline std::vector<PointSet> min_nbhds_from_generators(const std::vector<PointSet>& gens,
                                                       int n) {
  std::vector<PointSet> min_nbhd(n, PointSet::full_set(n));
  for (const auto& g : gens)
    for (int x = 0; x < n; ++x)
      if (g.contains(x)) min_nbhd[x] &= g;
  return min_nbhd;
}

}  // namespace detail

// A finite point set together with the explicit full family of its open sets.
// Immutable after construction; every query is exact set arithmetic.
class FiniteTopology {
 public:
  enum class Validate { kCheck, kTrusted };

  FiniteTopology(std::vector<std::string> points, std::vector<PointSet> opens,
                 Validate mode = Validate::kCheck)
      : points_(std::move(points)), opens_(std::move(opens)) {
    build_index();
    build_min_nbhds();
    if (mode == Validate::kCheck) check_family();
  }

  int n() const { return static_cast<int>(points_.size()); }
  const std::vector<std::string>& point_names() const { return points_; }
  const std::string& name(int i) const { return points_[i]; }

  int index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw InvalidSpace("unknown point '" + name + "'");
    return it->second;
  }
  bool has_point(const std::string& name) const { return index_.count(name) > 0; }

  PointSet full_set() const { return PointSet::full_set(n()); }

  const std::vector<PointSet>& opens() const { return opens_; }

  bool is_open(const PointSet& s) const {
    return std::binary_search(opens_.begin(), opens_.end(), s);
  }
  bool is_closed(const PointSet& s) const { return is_open(s.complement(n())); }

  // Intersection of all opens containing x; open itself, and the smallest
  // open neighborhood of x.
  const PointSet& minimal_neighborhood(int x) const { return min_nbhd_[x]; }

  // closure(S) = {x : U_x meets S}; the smallest closed superset.
  PointSet closure(const PointSet& s) const {
    PointSet out;
    for (int x = 0; x < n(); ++x)
      if (min_nbhd_[x].intersects(s)) out.add(x);
    return out;
  }

  // interior(S) = {x : U_x subset of S}; the largest open subset.
  PointSet interior(const PointSet& s) const {
    PointSet out;
    for (int x = 0; x < n(); ++x)
      if (min_nbhd_[x].subset_of(s)) out.add(x);
    return out;
  }

  PointSet parse_set(const std::vector<std::string>& names) const {
    PointSet s;
    for (const auto& nm : names) s.add(index_of(nm));
    return s;
  }

  std::vector<std::string> set_names(const PointSet& s) const {
    std::vector<std::string> out;
    for (int i : s.members()) out.push_back(points_[i]);
    return out;
  }

  bool operator==(const FiniteTopology& o) const {
    return points_ == o.points_ && opens_ == o.opens_;
  }

 private:
  void build_index() {
    if (points_.empty()) throw InvalidSpace("empty point set");
    if (points_.size() > static_cast<size_t>(kDerivedPointCap))
      throw TooLarge("space exceeds " + std::to_string(kDerivedPointCap) + " points");
    for (size_t i = 0; i < points_.size(); ++i)
      if (!index_.emplace(points_[i], static_cast<int>(i)).second)
        throw InvalidSpace("duplicate point '" + points_[i] + "'");
    std::sort(opens_.begin(), opens_.end());
    opens_.erase(std::unique(opens_.begin(), opens_.end()), opens_.end());
    const PointSet universe = PointSet::full_set(n());
    for (const auto& o : opens_)
      if (!o.subset_of(universe))
        throw InvalidSpace("open set outside the point universe");
  }

  void build_min_nbhds() {
    min_nbhd_.assign(points_.size(), PointSet::full_set(n()));
    for (const auto& o : opens_)
      for (int x = 0; x < n(); ++x)
        if (o.contains(x)) min_nbhd_[x] &= o;
  }

  // A family containing 0 and E is union/intersection closed iff it equals
  // the up-set family of its own minimal neighborhoods.
  void check_family() {
    if (n() > 20)
      throw InvalidSpace("explicit-family validation limited to 20 points");
    if (!is_open(PointSet::empty_set()) || !is_open(full_set()))
      throw InvalidSpace("family must contain the empty set and the full set");
    auto expect = detail::upset_family(min_nbhd_, kDerivedFamilyCap);
    if (expect != opens_)
      throw InvalidSpace("family not closed under union/intersection");
  }

  std::vector<std::string> points_;
  std::vector<PointSet> opens_;
  std::vector<PointSet> min_nbhd_;
  std::map<std::string, int> index_;
};

// Coarsest topology containing every generator.
inline FiniteTopology make_topology(std::vector<std::string> points,
                                    const std::vector<std::vector<std::string>>& generators) {
  if (points.empty()) throw InvalidSpace("empty point set");
  if (points.size() > static_cast<size_t>(ambient_point_cap()))
    throw InvalidSpace("ambient space exceeds " + std::to_string(ambient_point_cap()) +
                       " points");
  std::map<std::string, int> idx;
  for (size_t i = 0; i < points.size(); ++i)
    if (!idx.emplace(points[i], static_cast<int>(i)).second)
      throw InvalidSpace("duplicate point '" + points[i] + "'");
  std::vector<PointSet> gens;
  for (const auto& g : generators) {
    PointSet s;
    for (const auto& nm : g) {
      auto it = idx.find(nm);
      if (it == idx.end())
        throw InvalidSpace("generator references unknown point '" + nm + "'");
      s.add(it->second);
    }
    gens.push_back(s);
  }
  const int n = static_cast<int>(points.size());
  auto opens = detail::upset_family(detail::min_nbhds_from_generators(gens, n),
                                    kDerivedFamilyCap);
  return FiniteTopology(std::move(points), std::move(opens),
                        FiniteTopology::Validate::kTrusted);
}

// Convenience constructor from explicit index sets (tests, generators).
inline FiniteTopology topology_from_min_nbhds(std::vector<std::string> points,
                                              const std::vector<PointSet>& gens) {
  const int n = static_cast<int>(points.size());
  auto opens = detail::upset_family(detail::min_nbhds_from_generators(gens, n),
                                    kDerivedFamilyCap);
  return FiniteTopology(std::move(points), std::move(opens),
                        FiniteTopology::Validate::kTrusted);
}

// Subspace topology on S along with the sub-index -> ambient-index map.
struct Subspace {
  FiniteTopology topology;
  std::vector<int> to_ambient;
};

inline Subspace subspace_with_map(const FiniteTopology& t, const PointSet& s) {
  std::vector<int> amb = s.members();
  if (amb.empty()) throw InvalidSpace("empty subspace");
  std::vector<int> inv(t.n(), -1);
  std::vector<std::string> pts;
  for (size_t i = 0; i < amb.size(); ++i) {
    inv[amb[i]] = static_cast<int>(i);
    pts.push_back(t.name(amb[i]));
  }
  std::vector<PointSet> opens;
  opens.reserve(t.opens().size());
  for (const auto& o : t.opens()) {
    PointSet r;
    for (int x : amb)
      if (o.contains(x)) r.add(inv[x]);
    opens.push_back(r);
  }
  std::sort(opens.begin(), opens.end());
  opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
  return Subspace{FiniteTopology(std::move(pts), std::move(opens),
                                 FiniteTopology::Validate::kTrusted),
                  std::move(amb)};
}

inline FiniteTopology subspace(const FiniteTopology& t, const PointSet& s) {
  return subspace_with_map(t, s).topology;
}

// Product topology: points are pairs (row-major), opens generated by
// rectangles O1 x O2.  The minimal neighborhood of (x,y) is U_x x U_y.
inline FiniteTopology product(const FiniteTopology& a, const FiniteTopology& b) {
  size_t np = static_cast<size_t>(a.n()) * static_cast<size_t>(b.n());
  if (np > kDerivedPointCap)
    throw TooLarge("product has " + std::to_string(np) + " points");
  std::vector<std::string> pts;
  pts.reserve(np);
  std::vector<PointSet> mins(np);
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < b.n(); ++j) {
      pts.push_back("(" + a.name(i) + "," + b.name(j) + ")");
      PointSet m;
      for (int u : a.minimal_neighborhood(i).members())
        for (int v : b.minimal_neighborhood(j).members()) m.add(u * b.n() + v);
      mins[i * b.n() + j] = m;
    }
  auto opens = detail::upset_family(mins, kDerivedFamilyCap);
  return FiniteTopology(std::move(pts), std::move(opens),
                        FiniteTopology::Validate::kTrusted);
}

// Disjoint union: points tagged by component index; a set is open iff each
// restriction is open in its component.
inline FiniteTopology disjoint_union(const std::vector<FiniteTopology>& parts) {
  if (parts.empty()) throw InvalidSpace("disjoint union of zero spaces");
  size_t np = 0;
  for (const auto& p : parts) np += static_cast<size_t>(p.n());
  if (np > kDerivedPointCap)
    throw TooLarge("disjoint union has " + std::to_string(np) + " points");

  std::vector<std::string> pts;
  std::vector<PointSet> mins;
  for (size_t c = 0; c < parts.size(); ++c) {
    int offset = static_cast<int>(pts.size());
    for (int i = 0; i < parts[c].n(); ++i) {
      pts.push_back(parts[c].name(i) + "#" + std::to_string(c));
      PointSet m;
      for (int v : parts[c].minimal_neighborhood(i).members()) m.add(offset + v);
      mins.push_back(m);
    }
  }
  auto opens = detail::upset_family(mins, kDerivedFamilyCap);
  return FiniteTopology(std::move(pts), std::move(opens),
                        FiniteTopology::Validate::kTrusted);
}

// Finest topology on the class points making the projection continuous:
// a class set is open iff its preimage is open.
inline FiniteTopology quotient_topology(const FiniteTopology& t,
                                        const std::vector<std::string>& class_points,
                                        const std::vector<int>& class_of) {
  const int m = static_cast<int>(class_points.size());
  if (m == 0) throw InvalidSpace("quotient onto empty point set");
  if (m > 20) throw TooLarge("quotient target exceeds 20 points");
  if (class_of.size() != static_cast<size_t>(t.n()))
    throw InvalidSpace("class map is not total");
  std::vector<bool> hit(m, false);
  for (int c : class_of) {
    if (c < 0 || c >= m) throw InvalidSpace("class map hits unknown class");
    hit[c] = true;
  }
  for (bool h : hit)
    if (!h) throw InvalidSpace("class map is not surjective");

  std::vector<PointSet> opens;
  for (uint32_t mask = 0; mask < (uint32_t{1} << m); ++mask) {
    PointSet cls;
    for (int c = 0; c < m; ++c)
      if ((mask >> c) & 1u) cls.add(c);
    PointSet pre;
    for (int x = 0; x < t.n(); ++x)
      if (cls.contains(class_of[x])) pre.add(x);
    if (t.is_open(pre)) opens.push_back(cls);
  }
  return FiniteTopology(class_points, std::move(opens),
                        FiniteTopology::Validate::kTrusted);
}

}  // namespace tps
