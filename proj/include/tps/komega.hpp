#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tps/classify.hpp"
#include "tps/errors.hpp"
#include "tps/monotone_fn.hpp"
#include "tps/preorder.hpp"
#include "tps/separation.hpp"

namespace tps {

// A coherent chain K_1 ⊆ K_2 ⊆ ... ⊆ K_J of finite preordered spaces:
// inclusions[j][i] is the index in piece j+1 of point i of piece j.  Each
// piece must carry the topology and order induced from the next one, and
// each piece must be closed preordered.
struct Exhaustion {
  std::vector<PreorderedSpace> pieces;
  std::vector<std::vector<int>> inclusions;  // size pieces-1

  int steps() const { return static_cast<int>(pieces.size()); }

  // Image of a piece-j subset inside piece k >= j.
  PointSet push_forward(int j, int k, const PointSet& s) const {
    PointSet cur = s;
    for (int step = j; step < k; ++step) {
      PointSet next;
      for (int i : cur.members()) next.add(inclusions[step][i]);
      cur = next;
    }
    return cur;
  }

  // Restriction of a piece-k subset to piece j <= k.
  PointSet pull_back(int k, int j, const PointSet& s) const {
    PointSet cur = s;
    for (int step = k; step > j; --step) {
      const auto& inc = inclusions[step - 1];
      PointSet prev;
      for (size_t i = 0; i < inc.size(); ++i)
        if (cur.contains(inc[i])) prev.add(static_cast<int>(i));
      cur = prev;
    }
    return cur;
  }
};

struct ExhaustionReport {
  bool valid = true;
  int failing_step = -1;  // 1-based piece index of the first violation
  std::string message;
};

inline ExhaustionReport validate_exhaustion(const Exhaustion& exh) {
  auto fail = [](int step, std::string msg) {
    return ExhaustionReport{false, step, std::move(msg)};
  };
  if (exh.pieces.empty()) return fail(0, "exhaustion has no pieces");
  if (exh.inclusions.size() + 1 != exh.pieces.size())
    return fail(0, "inclusion count must be pieces-1");

  for (size_t j = 0; j < exh.pieces.size(); ++j)
    if (!is_closed_preorder(exh.pieces[j]))
      return fail(static_cast<int>(j) + 1, "piece is not closed preordered");

  for (size_t j = 0; j + 1 < exh.pieces.size(); ++j) {
    const auto& small = exh.pieces[j];
    const auto& big = exh.pieces[j + 1];
    const auto& inc = exh.inclusions[j];
    if (inc.size() != static_cast<size_t>(small.n()))
      return fail(static_cast<int>(j) + 1, "inclusion map is not total");
    PointSet image;
    for (int i = 0; i < small.n(); ++i) {
      if (inc[i] < 0 || inc[i] >= big.n())
        return fail(static_cast<int>(j) + 1, "inclusion map leaves the next piece");
      if (image.contains(inc[i]))
        return fail(static_cast<int>(j) + 1, "inclusion map is not injective");
      image.add(inc[i]);
    }
    // Induced-topology coherence.
    PreorderedSubspace induced = preordered_subspace(big, image);
    std::vector<int> back(big.n(), -1);
    for (size_t i = 0; i < induced.to_ambient.size(); ++i)
      back[induced.to_ambient[i]] = static_cast<int>(i);
    auto relabel = [&](const PointSet& small_set) {
      PointSet out;
      for (int i : small_set.members()) out.add(back[inc[i]]);
      return out;
    };
    std::vector<PointSet> relabeled;
    for (const auto& o : small.topology.opens()) relabeled.push_back(relabel(o));
    std::sort(relabeled.begin(), relabeled.end());
    if (relabeled != induced.space.topology.opens())
      return fail(static_cast<int>(j) + 1, "piece topology differs from the induced one");
    for (int x = 0; x < small.n(); ++x)
      for (int y = 0; y < small.n(); ++y)
        if (small.order.leq(x, y) !=
            induced.space.order.leq(back[inc[x]], back[inc[y]]))
          return fail(static_cast<int>(j) + 1, "piece order differs from the induced one");
  }
  return ExhaustionReport{};
}

// Per-step record of the streaming separation.
struct SeparationTrace {
  struct Step {
    PointSet tilde_A, tilde_B;  // closed monotone targets in K_j
    PointSet U, V;              // open monotone separators in K_j
  };
  std::vector<Step> steps;
};

namespace detail {

inline void require_coherent_targets(const Exhaustion& exh,
                                     const std::vector<PointSet>& per_piece,
                                     bool decreasing, const char* label) {
  if (per_piece.size() != exh.pieces.size())
    throw InvalidInput(std::string(label) + ": one set per piece required");
  for (size_t j = 0; j < exh.pieces.size(); ++j) {
    const auto& ps = exh.pieces[j];
    const auto& s = per_piece[j];
    if (!s.subset_of(ps.topology.full_set()))
      throw InvalidInput(std::string(label) + ": set leaves its piece");
    if (ps.topology.closure(s) != s ||
        (decreasing ? !ps.order.is_decreasing(s) : !ps.order.is_increasing(s)))
      throw InvalidInput(std::string(label) + ": set not closed monotone in its piece");
    if (j + 1 < exh.pieces.size() &&
        exh.pull_back(static_cast<int>(j) + 1, static_cast<int>(j), per_piece[j + 1]) !=
            per_piece[j])
      throw InvalidInput(std::string(label) + ": sets not coherent across pieces");
  }
}

}  // namespace detail

// Streaming separation over an exhaustion, replaying the admissible-sequence
// recurrence: tilde_A_1 = A_1; at every step pick U_j, V_j open monotone in
// K_j with D_j(U_j) ∩ I_j(V_j) = ∅ (three separation calls), then
// tilde_A_{j+1} = [d(D_j(U_j)) ∩ K_{j+1}] ∪ A_{j+1} and dually for B.
inline SeparationTrace stream_separate(const Exhaustion& exh,
                                       const std::vector<PointSet>& A_per_piece,
                                       const std::vector<PointSet>& B_per_piece) {
  ExhaustionReport rep = validate_exhaustion(exh);
  if (!rep.valid)
    throw InvalidInput("invalid exhaustion at step " + std::to_string(rep.failing_step) +
                       ": " + rep.message);
  detail::require_coherent_targets(exh, A_per_piece, true, "A");
  detail::require_coherent_targets(exh, B_per_piece, false, "B");
  for (size_t j = 0; j < exh.pieces.size(); ++j)
    if (A_per_piece[j].intersects(B_per_piece[j]))
      throw InvalidInput("A and B intersect inside piece " + std::to_string(j + 1));

  SeparationTrace trace;
  PointSet tilde_A = A_per_piece[0], tilde_B = B_per_piece[0];
  for (size_t j = 0; j < exh.pieces.size(); ++j) {
    const auto& ps = exh.pieces[j];
    if (tilde_A.intersects(tilde_B))
      throw InvalidInput("targets intersect at step " + std::to_string(j + 1));
    SpaceAnalysis a = analyze(ps);
    SeparatorPair uv = detail::separate_with_disjoint_hulls(ps, a, tilde_A, tilde_B);
    trace.steps.push_back(SeparationTrace::Step{tilde_A, tilde_B, uv.U, uv.V});

    if (j + 1 < exh.pieces.size()) {
      const auto& next = exh.pieces[j + 1];
      PointSet DU = closed_dec_hull(ps, uv.U);
      PointSet IV = closed_inc_hull(ps, uv.V);
      tilde_A = next.order.dec_hull(exh.push_forward(static_cast<int>(j),
                                                     static_cast<int>(j) + 1, DU)) |
                A_per_piece[j + 1];
      tilde_B = next.order.inc_hull(exh.push_forward(static_cast<int>(j),
                                                     static_cast<int>(j) + 1, IV)) |
                B_per_piece[j + 1];
    }
  }
  return trace;
}

// k_omega openness certificate at finite horizon: the family must be
// restriction-coherent (U_j = U_{j+1} ∩ K_j) and each member open in its
// piece.
inline bool limit_open_check(const Exhaustion& exh, const std::vector<PointSet>& U_per_piece) {
  if (U_per_piece.size() != exh.pieces.size())
    throw InvalidInput("one set per piece required");
  for (size_t j = 0; j + 1 < exh.pieces.size(); ++j)
    if (exh.pull_back(static_cast<int>(j) + 1, static_cast<int>(j), U_per_piece[j + 1]) !=
        U_per_piece[j])
      throw InvalidInput("family is not restriction-coherent");
  for (size_t j = 0; j < exh.pieces.size(); ++j)
    if (!exh.pieces[j].topology.is_open(U_per_piece[j])) return false;
  return true;
}

// Streaming extension: start from f on K_1 and extend piece by piece with
// pinned level sets D_j -> 0, I_j -> 1; returns the function on K_J.
inline MonotoneFn stream_extend(const Exhaustion& exh, const PartialFn& f_on_K1,
                                const std::vector<PointSet>& D_per_piece,
                                const std::vector<PointSet>& I_per_piece) {
  ExhaustionReport rep = validate_exhaustion(exh);
  if (!rep.valid)
    throw InvalidInput("invalid exhaustion at step " + std::to_string(rep.failing_step) +
                       ": " + rep.message);
  detail::require_coherent_targets(exh, D_per_piece, true, "D");
  detail::require_coherent_targets(exh, I_per_piece, false, "I");
  for (size_t j = 0; j < exh.pieces.size(); ++j)
    if (D_per_piece[j].intersects(I_per_piece[j]))
      throw InvalidInput("D and I intersect inside piece " + std::to_string(j + 1));

  // f_1 lives on a subset of K_1.
  std::optional<MonotoneFn> current;
  {
    const auto& first = exh.pieces[0];
    try {
      current = extend_with_pinning(first, f_on_K1, D_per_piece[0], I_per_piece[0]);
    } catch (const InvalidInput& e) {
      throw InvalidInput("step 1: " + std::string(e.what()));
    }
  }
  for (size_t j = 0; j + 1 < exh.pieces.size(); ++j) {
    const auto& next = exh.pieces[j + 1];
    PartialFn carried;
    carried.domain =
        exh.push_forward(static_cast<int>(j), static_cast<int>(j) + 1,
                         exh.pieces[j].topology.full_set());
    for (int i = 0; i < exh.pieces[j].n(); ++i)
      carried.values[exh.inclusions[j][i]] = current->at(i);
    try {
      current = extend_with_pinning(next, carried, D_per_piece[j + 1], I_per_piece[j + 1]);
    } catch (const InvalidInput& e) {
      throw InvalidInput("step " + std::to_string(j + 2) + ": " + std::string(e.what()));
    }
  }
  return *current;
}

}  // namespace tps
