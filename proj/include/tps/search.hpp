#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tps/classify.hpp"
#include "tps/enumerate.hpp"
#include "tps/errors.hpp"
#include "tps/random_gen.hpp"

namespace tps {

enum class Flag { kSemiclosed, kClosed, kConvex, kRegular, kNormal, kPerfectlyNormal };

inline const std::vector<std::pair<std::string, Flag>>& flag_names() {
  static const std::vector<std::pair<std::string, Flag>> table = {
      {"semiclosed", Flag::kSemiclosed},   {"closed", Flag::kClosed},
      {"convex", Flag::kConvex},           {"regular", Flag::kRegular},
      {"normal", Flag::kNormal},           {"perfectly_normal", Flag::kPerfectlyNormal}};
  return table;
}

inline Flag parse_flag(const std::string& name) {
  for (const auto& [nm, f] : flag_names())
    if (nm == name) return f;
  throw InvalidInput("unknown flag '" + name + "'");
}

struct SpaceQuery {
  std::vector<Flag> require;
  std::vector<Flag> forbid;
};

namespace detail {

// Match through the pointwise classifier; the two cheap flags are tried
// before per-point hulls are computed.
inline bool matches(const FiniteTopology& tp, const Preorder& ord, const SpaceQuery& q) {
  std::optional<FastClassifier> fc;
  auto eval = [&](Flag f) {
    switch (f) {
      case Flag::kSemiclosed:
        return semiclosed_flag(tp, ord);
      case Flag::kClosed:
        return is_closed_preorder(tp, ord);
      default:
        break;
    }
    if (!fc) fc.emplace(tp, ord);
    switch (f) {
      case Flag::kConvex:
        return fc->convex();
      case Flag::kRegular:
        return fc->regular();
      case Flag::kNormal:
        return fc->normal();
      case Flag::kPerfectlyNormal:
        return fc->perfectly_normal();
      default:
        return false;
    }
  };
  static const Flag order[] = {Flag::kSemiclosed, Flag::kClosed,        Flag::kConvex,
                               Flag::kRegular,    Flag::kNormal,        Flag::kPerfectlyNormal};
  for (Flag f : order) {
    bool required = std::find(q.require.begin(), q.require.end(), f) != q.require.end();
    bool forbidden = std::find(q.forbid.begin(), q.forbid.end(), f) != q.forbid.end();
    if (!required && !forbidden) continue;
    if (required && forbidden) return false;  // contradictory query
    bool v = eval(f);
    if (required && !v) return false;
    if (forbidden && v) return false;
  }
  return true;
}

}  // namespace detail

// Deterministic exhaustive search over all labeled spaces with up to max_n
// points: point counts ascending, then topology mask ascending, then order
// mask ascending; the first match is returned.
inline std::optional<PreorderedSpace> find_space_exhaustive(int max_n, const SpaceQuery& q) {
  for (int n = 1; n <= max_n; ++n) {
    const auto& masks = all_preorder_masks(n);
    std::vector<Preorder> orders;
    orders.reserve(masks.size());
    for (uint64_t m : masks) orders.push_back(preorder_from_mask(n, m));
    for (uint64_t tmask : masks) {
      FiniteTopology topo = topology_from_mask(n, tmask);
      for (const auto& ord : orders)
        if (detail::matches(topo, ord, q)) return PreorderedSpace(topo, ord);
    }
  }
  return std::nullopt;
}

// Seeded randomized search; point counts cycle through 2..max_n.
inline std::optional<PreorderedSpace> find_space_random(int max_n, const SpaceQuery& q,
                                                        uint64_t seed, int iterations) {
  Rng rng(seed);
  std::uniform_int_distribution<int> size(1, max_n);
  for (int i = 0; i < iterations; ++i) {
    int n = size(rng);
    PreorderedSpace ps = random_space(rng, n);
    if (detail::matches(ps.topology, ps.order, q)) return ps;
  }
  return std::nullopt;
}

}  // namespace tps
