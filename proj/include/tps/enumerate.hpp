#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tps/errors.hpp"
#include "tps/preorder.hpp"
#include "tps/topology.hpp"

namespace tps {

// Exhaustive enumeration of labeled preorders on n points, as row-major
// relation bitmasks (bit x*n+y means x <= y).  Finite topologies are in exact
// bijection with preorders (opens = up-sets, minimal neighborhood of x =
// successor row of x), so the same list enumerates all labeled topologies.
//
// Generation: depth-first over the off-diagonal pairs.  Accepting an edge
// applies its transitive consequences immediately; a consequence that was
// already refused prunes the branch.  Every preorder is reached exactly once.
namespace detail {

class PreorderEnumerator {
 public:
  explicit PreorderEnumerator(int n) : n_(n), succ_(n), pred_(n), refused_(n) {
    for (int i = 0; i < n; ++i) {
      succ_[i] = uint16_t(1) << i;
      pred_[i] = uint16_t(1) << i;
      refused_[i] = 0;
    }
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (x != y) pairs_.emplace_back(x, y);
  }

  std::vector<uint64_t> run() {
    std::vector<uint64_t> out;
    walk(0, out);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  bool has(int x, int y) const { return (succ_[x] >> y) & 1; }

  void walk(size_t p, std::vector<uint64_t>& out) {
    if (p == pairs_.size()) {
      uint64_t mask = 0;
      for (int x = 0; x < n_; ++x)
        for (int y = 0; y < n_; ++y)
          if (has(x, y)) mask |= uint64_t{1} << (x * n_ + y);
      out.push_back(mask);
      return;
    }
    auto [x, y] = pairs_[p];
    if (has(x, y)) {
      walk(p + 1, out);
      return;
    }
    // Refuse x <= y.
    refused_[x] |= uint16_t(1) << y;
    walk(p + 1, out);
    refused_[x] &= ~(uint16_t(1) << y);

    // Accept x <= y: every a <= x, y <= b forces a <= b.
    std::vector<std::pair<int, int>> added;
    bool ok = true;
    for (int a = 0; ok && a < n_; ++a) {
      if (!has(a, x)) continue;
      uint16_t forced = succ_[y] & ~succ_[a];
      for (int b = 0; b < n_; ++b) {
        if (!((forced >> b) & 1)) continue;
        if ((refused_[a] >> b) & 1) {
          ok = false;
          break;
        }
        added.emplace_back(a, b);
      }
    }
    if (ok) {
      for (auto [a, b] : added) {
        succ_[a] |= uint16_t(1) << b;
        pred_[b] |= uint16_t(1) << a;
      }
      walk(p + 1, out);
      for (auto [a, b] : added) {
        succ_[a] &= ~(uint16_t(1) << b);
        pred_[b] &= ~(uint16_t(1) << a);
      }
    }
  }

  int n_;
  std::vector<uint16_t> succ_, pred_, refused_;
  std::vector<std::pair<int, int>> pairs_;
};

}  // namespace detail

inline const std::vector<uint64_t>& all_preorder_masks(int n) {
  if (n < 1 || n > 6) throw InvalidInput("exhaustive enumeration supports 1..6 points");
  static std::map<int, std::vector<uint64_t>> cache;
  auto it = cache.find(n);
  if (it == cache.end())
    it = cache.emplace(n, detail::PreorderEnumerator(n).run()).first;
  return it->second;
}

inline Preorder preorder_from_mask(int n, uint64_t mask) {
  std::vector<std::pair<int, int>> edges;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if ((mask >> (x * n + y)) & 1) edges.emplace_back(x, y);
  return Preorder::from_edges(n, edges);
}

// The topology whose opens are the up-sets of the mask relation.
inline FiniteTopology topology_from_mask(int n, uint64_t mask) {
  std::vector<PointSet> mins(n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if ((mask >> (x * n + y)) & 1) mins[x].add(y);
  auto opens = detail::upset_family(mins, kDerivedFamilyCap);
  return FiniteTopology(default_point_names(n), std::move(opens),
                        FiniteTopology::Validate::kTrusted);
}

}  // namespace tps
