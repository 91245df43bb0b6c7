#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tps/classify.hpp"
#include "tps/komega.hpp"
#include "tps/preorder.hpp"
#include "tps/topology.hpp"

namespace tps {

// Seeded generators for corpora of spaces.  mt19937_64 keeps the streams
// reproducible across platforms.
using Rng = std::mt19937_64;

inline PointSet random_subset(Rng& rng, int n, double density = 0.5) {
  std::bernoulli_distribution bit(density);
  PointSet s;
  for (int i = 0; i < n; ++i)
    if (bit(rng)) s.add(i);
  return s;
}

inline Preorder random_preorder(Rng& rng, int n) {
  std::uniform_int_distribution<int> edge_count(0, 2 * n);
  std::uniform_int_distribution<int> point(0, n - 1);
  std::vector<std::pair<int, int>> edges;
  int k = edge_count(rng);
  for (int i = 0; i < k; ++i) edges.emplace_back(point(rng), point(rng));
  return Preorder::from_edges(n, edges);
}

inline FiniteTopology random_topology(Rng& rng, int n) {
  std::uniform_int_distribution<int> gen_count(0, n + 2);
  std::vector<PointSet> gens;
  int k = gen_count(rng);
  for (int i = 0; i < k; ++i) gens.push_back(random_subset(rng, n));
  return topology_from_min_nbhds(default_point_names(n), gens);
}

// Arbitrary space; no classification guarantees.
inline PreorderedSpace random_space(Rng& rng, int n) {
  FiniteTopology t = random_topology(rng, n);
  Preorder o = random_preorder(rng, n);
  return PreorderedSpace(std::move(t), std::move(o));
}

// Space guaranteed to carry a closed preorder.  The topology generated by all
// hull complements E\d(z), E\i(z) makes the preorder closed, and refining it
// with extra opens preserves closedness (the rectangle witnesses survive);
// random coarsenings are kept only when the closedness check still passes.
inline PreorderedSpace random_closed_space(Rng& rng, int n) {
  Preorder o = random_preorder(rng, n);
  std::vector<PointSet> hull_complements;
  for (int z = 0; z < n; ++z) {
    hull_complements.push_back(o.down(z).complement(n));
    hull_complements.push_back(o.up(z).complement(n));
  }

  std::uniform_int_distribution<int> variant(0, 2);
  switch (variant(rng)) {
    case 0:
      break;  // the hull-complement topology itself
    case 1: {  // refined by random extra generators
      std::uniform_int_distribution<int> extra(1, n);
      int k = extra(rng);
      for (int i = 0; i < k; ++i) hull_complements.push_back(random_subset(rng, n));
      break;
    }
    default: {  // coarsening attempt: random subfamily, fall back when not closed
      std::vector<PointSet> some;
      std::bernoulli_distribution keep(0.6);
      for (const auto& g : hull_complements)
        if (keep(rng)) some.push_back(g);
      FiniteTopology t = topology_from_min_nbhds(default_point_names(n), some);
      if (is_closed_preorder(t, o)) return PreorderedSpace(std::move(t), std::move(o));
      break;
    }
  }
  FiniteTopology t = topology_from_min_nbhds(default_point_names(n), hull_complements);
  PreorderedSpace ps(std::move(t), std::move(o));
  if (!is_closed_preorder(ps))
    throw InternalError("hull-complement topology failed to close the preorder");
  return ps;
}

// Disjoint closed decreasing / closed increasing pair; (empty, empty) when the
// draw cannot be made disjoint.
inline std::pair<PointSet, PointSet> random_closed_monotone_pair(Rng& rng,
                                                                 const PreorderedSpace& ps) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    PointSet A = closed_dec_hull(ps, random_subset(rng, ps.n(), 0.3));
    PointSet B = closed_inc_hull(ps, random_subset(rng, ps.n(), 0.3));
    if (!A.intersects(B)) return {A, B};
    if (!A.empty() && !closed_inc_hull(ps, B - A).intersects(A))
      return {A, closed_inc_hull(ps, B - A)};
  }
  return {PointSet::empty_set(), PointSet::empty_set()};
}

// Coherent exhaustion: nested subspaces of one closed preordered space.
inline Exhaustion random_exhaustion(Rng& rng, int steps, int max_points) {
  int n = std::uniform_int_distribution<int>(std::min(steps, max_points), max_points)(rng);
  PreorderedSpace full = random_closed_space(rng, n);

  // Nested nonempty subsets S_1 ⊆ ... ⊆ S_J = E.
  std::vector<PointSet> supports(steps);
  supports[steps - 1] = full.topology.full_set();
  for (int j = steps - 2; j >= 0; --j) {
    PointSet s = supports[j + 1];
    std::vector<int> ms = s.members();
    std::shuffle(ms.begin(), ms.end(), rng);
    int drop = std::uniform_int_distribution<int>(0, std::max(0, s.count() - 1))(rng);
    for (int i = 0; i < drop; ++i) s.remove(ms[i]);
    supports[j] = s;
  }

  Exhaustion exh;
  std::vector<std::vector<int>> to_ambient;
  for (int j = 0; j < steps; ++j) {
    PreorderedSubspace sub = preordered_subspace(full, supports[j]);
    exh.pieces.push_back(std::move(sub.space));
    to_ambient.push_back(std::move(sub.to_ambient));
  }
  for (int j = 0; j + 1 < steps; ++j) {
    std::vector<int> inc(to_ambient[j].size());
    for (size_t i = 0; i < to_ambient[j].size(); ++i) {
      int amb = to_ambient[j][i];
      int pos = -1;
      for (size_t k = 0; k < to_ambient[j + 1].size(); ++k)
        if (to_ambient[j + 1][k] == amb) {
          pos = static_cast<int>(k);
          break;
        }
      inc[i] = pos;
    }
    exh.inclusions.push_back(std::move(inc));
  }
  return exh;
}

}  // namespace tps
