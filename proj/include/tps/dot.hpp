#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "tps/preorder.hpp"

namespace tps {

namespace detail {

// Transitive reduction of a strict (irreflexive, transitive) relation given
// as an adjacency predicate: keep x -> y with nothing strictly between.
template <class Rel>
std::vector<std::pair<int, int>> covering_edges(int n, Rel rel) {
  std::vector<std::pair<int, int>> out;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (!rel(x, y)) continue;
      bool covered = true;
      for (int z = 0; z < n; ++z)
        if (rel(x, z) && rel(z, y)) {
          covered = false;
          break;
        }
      if (covered) out.emplace_back(x, y);
    }
  return out;
}

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace detail

// DOT digraph: solid edges are the covering (Hasse-reduced) strict order
// relations, dashed edges the strict minimal-neighborhood containments.
inline std::string emit_dot(const PreorderedSpace& ps, const std::string& name = "space") {
  const int n = ps.n();
  std::ostringstream os;
  os << "digraph \"" << detail::dot_escape(name) << "\" {\n";
  for (int x = 0; x < n; ++x)
    os << "  n" << x << " [label=\"" << detail::dot_escape(ps.topology.name(x)) << "\"];\n";
  for (auto [x, y] : detail::covering_edges(
           n, [&](int a, int b) { return ps.order.strictly_less(a, b); }))
    os << "  n" << x << " -> n" << y << ";\n";
  for (auto [x, y] : detail::covering_edges(n, [&](int a, int b) {
         const auto& ua = ps.topology.minimal_neighborhood(a);
         const auto& ub = ps.topology.minimal_neighborhood(b);
         return ua != ub && ua.subset_of(ub);
       }))
    os << "  n" << x << " -> n" << y << " [style=dashed];\n";
  os << "}\n";
  return os.str();
}

}  // namespace tps
