#pragma once

#include <algorithm>
#include <vector>

#include "tps/classify.hpp"
#include "tps/errors.hpp"
#include "tps/monotone_fn.hpp"
#include "tps/preorder.hpp"
#include "tps/separation.hpp"

namespace tps {

enum class RepresentationMode { kRepresent, kIsotoneFamily, kUtilityFamily };

// mode=kRepresent: x <= y iff every f has f(x) <= f(y), both directions over
// all ordered pairs.  The family modes check every member's predicates.
inline bool verify_representation(const PreorderedSpace& ps,
                                  const std::vector<MonotoneFn>& family,
                                  RepresentationMode mode) {
  switch (mode) {
    case RepresentationMode::kRepresent: {
      for (int x = 0; x < ps.n(); ++x)
        for (int y = 0; y < ps.n(); ++y) {
          bool all_leq = true;
          for (const auto& f : family)
            if (f.at(x) > f.at(y)) {
              all_leq = false;
              break;
            }
          if (all_leq != ps.order.leq(x, y)) return false;
        }
      return true;
    }
    case RepresentationMode::kIsotoneFamily:
      for (const auto& f : family)
        if (!is_continuous(ps, f) || !is_isotone(ps, f)) return false;
      return true;
    case RepresentationMode::kUtilityFamily:
      for (const auto& f : family)
        if (!is_continuous(ps, f) || !is_utility(ps, f)) return false;
      return true;
  }
  return false;
}

namespace detail {

inline void dedup_by_values(std::vector<MonotoneFn>& fs) {
  std::vector<MonotoneFn> out;
  for (auto& f : fs)
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(std::move(f));
  fs = std::move(out);
}

}  // namespace detail

// Finite isotone representation: one separating function per ordered pair
// x not<= y, obtained by separating d(y) from i(x); g(y) = 0 < 1 = g(x).
// Pairs are visited in lexicographic point order, functions deduplicated by
// value vector.
inline std::vector<MonotoneFn> isotone_representation(const PreorderedSpace& ps) {
  SpaceAnalysis a = analyze(ps);
  if (!detail::semiclosed_flag(ps))
    throw InvalidInput("isotone representation requires a semiclosed preordered space");
  std::vector<MonotoneFn> out;
  for (int x = 0; x < ps.n(); ++x)
    for (int y = 0; y < ps.n(); ++y) {
      if (ps.order.leq(x, y)) continue;
      out.push_back(urysohn(ps, ps.order.down(y), ps.order.up(x)));
    }
  detail::dedup_by_values(out);
  return out;
}

// Upgrade a finite isotone representation to a finite utility representation:
// g = normalized weighted sum of the family (a utility whenever the family
// represents), plus one blend gt_k = (1 - 1/n_k) g_k + g / n_k per member,
// with n_k the smallest integer making every strict comparison witnessed by
// g_k survive the blend.
inline std::vector<MonotoneFn> utilities_from_isotones(const PreorderedSpace& ps,
                                                       const std::vector<MonotoneFn>& G) {
  if (!verify_representation(ps, G, RepresentationMode::kRepresent))
    throw InvalidInput("family does not represent the preorder");
  if (G.empty()) return {};

  MonotoneFn g = weighted_sum(G);
  std::vector<MonotoneFn> out{g};
  for (const auto& gk : G) {
    // Witnessed pairs for this member: x not<= y with g_k(x) > g_k(y).
    // Need (1 - 1/n) (g_k(x) - g_k(y)) + (g(x) - g(y)) / n > 0, i.e.
    // n > 1 - (g(x) - g(y)) / (g_k(x) - g_k(y)).
    mpz_class n_k = 1;
    for (int x = 0; x < ps.n(); ++x)
      for (int y = 0; y < ps.n(); ++y) {
        if (ps.order.leq(x, y)) continue;
        Rational dk = gk.at(x) - gk.at(y);
        if (dk <= 0) continue;
        Rational bound = 1 - (g.at(x) - g.at(y)) / dk;
        mpz_class candidate;
        mpz_fdiv_q(candidate.get_mpz_t(), bound.get_num().get_mpz_t(),
                   bound.get_den().get_mpz_t());
        candidate += 1;  // smallest integer strictly above `bound`
        if (candidate > n_k) n_k = candidate;
      }
    Rational blend_g(mpz_class(1), n_k);
    Rational blend_gk = 1 - blend_g;
    std::vector<Rational> vals;
    vals.reserve(ps.n());
    for (int x = 0; x < ps.n(); ++x)
      vals.push_back(Rational(blend_gk * gk.at(x) + blend_g * g.at(x)));
    out.emplace_back(std::move(vals));
  }
  detail::dedup_by_values(out);
  return out;
}

// Full pipeline: isotone representation, then the utility upgrade.
inline std::vector<MonotoneFn> utility_representation(const PreorderedSpace& ps) {
  return utilities_from_isotones(ps, isotone_representation(ps));
}

}  // namespace tps
