// Acceptance suite: one check per shipped guarantee, each printed as a
// single [PASS]/[FAIL] line.  Runs everything by default; `acceptance N`
// runs one check.  Exit 0 iff every selected check passes.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "oracles.hpp"
#include "tps/classify.hpp"
#include "tps/komega.hpp"
#include "tps/monotone_fn.hpp"
#include "tps/quotient.hpp"
#include "tps/random_gen.hpp"
#include "tps/search.hpp"
#include "tps/separation.hpp"
#include "tps/utility_repr.hpp"

using namespace tps;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

constexpr uint64_t kCorpusSeed = 20260810;

// The corpus: 1000 spaces carrying a verified closed preorder (n <= 6),
// plus 300 unconstrained spaces for the checks that want arbitrary input.
const std::vector<PreorderedSpace>& closed_corpus() {
  static const std::vector<PreorderedSpace> corpus = [] {
    std::vector<PreorderedSpace> out;
    Rng rng(kCorpusSeed);
    while (out.size() < 1000) {
      int n = 2 + static_cast<int>(rng() % 5);
      if (out.size() % 2 == 0) {
        out.push_back(random_closed_space(rng, n));
      } else {
        // Rejection-sampled arbitrary spaces keep the corpus from looking
        // only like hull-complement topologies.
        bool found = false;
        for (int tries = 0; tries < 40 && !found; ++tries) {
          PreorderedSpace ps = random_space(rng, n);
          if (is_closed_preorder(ps)) {
            out.push_back(std::move(ps));
            found = true;
          }
        }
        if (!found) out.push_back(random_closed_space(rng, n));
      }
    }
    return out;
  }();
  return corpus;
}

const std::vector<PreorderedSpace>& mixed_corpus() {
  static const std::vector<PreorderedSpace> corpus = [] {
    std::vector<PreorderedSpace> out;
    Rng rng(kCorpusSeed + 1);
    for (int i = 0; i < 300; ++i)
      out.push_back(random_space(rng, 1 + static_cast<int>(rng() % 6)));
    return out;
  }();
  return corpus;
}

std::vector<std::pair<PointSet, PointSet>> disjoint_pairs(const SpaceAnalysis& a) {
  std::vector<std::pair<PointSet, PointSet>> out;
  for (const auto& A : a.closed_dec)
    for (const auto& B : a.closed_inc)
      if (!A.intersects(B)) out.emplace_back(A, B);
  return out;
}

// 1. Every space of the corpus with a closed preorder classifies as normally
//    preordered, inside the time budget.
Outcome criterion1() {
  auto t0 = Clock::now();
  size_t checked = 0;
  for (const auto& ps : closed_corpus()) {
    if (!is_closed_preorder(ps)) return {false, "corpus space lost closedness"};
    if (!classify(ps).normal)
      return {false, "closed space classified as non-normal (n=" +
                         std::to_string(ps.n()) + ")"};
    ++checked;
  }
  double dt = seconds_since(t0);
  std::ostringstream os;
  os << checked << " closed spaces all normal in " << dt << " s";
  return {checked >= 1000 && dt < 60.0, os.str()};
}

// 2. d(S) = D(S) and i(S) = I(S) for every subset of every corpus space.
Outcome criterion2() {
  size_t sets = 0;
  for (const auto& ps : closed_corpus()) {
    for (const auto& s : oracles::all_subsets(ps.n())) {
      if (dec_hull(ps, s) != closed_dec_hull(ps, s)) return {false, "d(S) != D(S)"};
      if (inc_hull(ps, s) != closed_inc_hull(ps, s)) return {false, "i(S) != I(S)"};
      ++sets;
    }
  }
  return {true, std::to_string(sets) + " subset hulls compared exactly"};
}

// 3 & 5. Constructor soundness on every applicable instance of the corpus:
//    urysohn, extend_with_pinning and perfectly_separate on every disjoint
//    closed-monotone pair; extend_isotone on sampled (S, f) instances.
Outcome criterion3(bool exact_level_mode) {
  Rng rng(kCorpusSeed + 2);
  size_t instances = 0;
  for (const auto& ps : closed_corpus()) {
    SpaceAnalysis a = analyze(ps);
    for (const auto& [A, B] : disjoint_pairs(a)) {
      if (exact_level_mode) {
        MonotoneFn f = perfectly_separate(ps, A, B);
        if (!is_continuous(ps, f) || !is_isotone(ps, f))
          return {false, "perfectly_separate output not continuous isotone"};
        if (f.level_set(Rational(0)) != A || f.level_set(Rational(1)) != B)
          return {false, "perfectly_separate level sets not exact"};
        ++instances;
        continue;
      }
      MonotoneFn f = urysohn(ps, A, B);
      if (!is_continuous(ps, f) || !is_isotone(ps, f))
        return {false, "urysohn output not continuous isotone"};
      for (int x : A.members())
        if (f.at(x) != 0) return {false, "urysohn f not 0 on A"};
      for (int x : B.members())
        if (f.at(x) != 1) return {false, "urysohn f not 1 on B"};

      PartialFn empty_fn;
      MonotoneFn base = extend_with_pinning(ps, empty_fn, A, B);
      PointSet K = random_subset(rng, ps.n(), 0.4);
      PartialFn g;
      g.domain = K;
      for (int x : K.members()) g.values[x] = base.at(x);
      MonotoneFn F = extend_with_pinning(ps, g, A, B);
      if (!is_continuous(ps, F) || !is_isotone(ps, F))
        return {false, "extend_with_pinning output not continuous isotone"};
      for (int x : K.members())
        if (F.at(x) != base.at(x)) return {false, "extend_with_pinning lost f on K"};
      for (int x : A.members())
        if (F.at(x) != 0) return {false, "extend_with_pinning lost the A pin"};
      for (int x : B.members())
        if (F.at(x) != 1) return {false, "extend_with_pinning lost the B pin"};
      instances += 2;
    }
    if (!exact_level_mode) {
      // Sampled subspace extension instances.
      for (int k = 0; k < 2; ++k) {
        PointSet S = random_subset(rng, ps.n(), 0.6);
        if (S.empty()) continue;
        PreorderedSubspace sub = preordered_subspace(ps, S);
        MonotoneFn on_sub = oracles::random_continuous_isotone(rng, sub.space);
        PartialFn f;
        f.domain = S;
        for (int i = 0; i < sub.space.n(); ++i) f.values[sub.to_ambient[i]] = on_sub.at(i);
        if (!check_extension_condition(ps, f)) continue;
        MonotoneFn F = extend_isotone(ps, f);
        if (!is_continuous(ps, F) || !is_isotone(ps, F))
          return {false, "extend_isotone output not continuous isotone"};
        for (auto& [x, v] : f.values)
          if (F.at(x) != v) return {false, "extend_isotone failed to restrict to f"};
        ++instances;
      }
    }
  }
  return {true, std::to_string(instances) + " constructions verified"};
}

// 4. Extension existence (component-level brute force) iff the threshold
//    condition, on spaces with n <= 5.  The biconditional holds on normally
//    preordered ambient spaces; necessity (extension implies condition, so
//    condition-false implies no extension) holds on every space and gives
//    the criterion its failing side.
Outcome criterion4() {
  Rng rng(kCorpusSeed + 3);
  size_t iff_checked = 0, necessity_checked = 0, without = 0;
  for (int trial = 0; trial < 700; ++trial) {
    int n = 2 + static_cast<int>(rng() % 4);
    PreorderedSpace ps =
        (trial % 2 == 0) ? random_space(rng, n) : random_closed_space(rng, n);
    bool normal = classify(ps).normal;
    PointSet S = random_subset(rng, n, 0.6);
    if (S.empty()) continue;
    PreorderedSubspace sub = preordered_subspace(ps, S);
    MonotoneFn on_sub = oracles::random_continuous_isotone(rng, sub.space);
    PartialFn f;
    f.domain = S;
    for (int i = 0; i < sub.space.n(); ++i) f.values[sub.to_ambient[i]] = on_sub.at(i);
    bool oracle = oracles::brute_extension_exists(ps, f);
    bool condition = check_extension_condition(ps, f);
    if (oracle && !condition)
      return {false, "an extendible instance violates the condition"};
    ++necessity_checked;
    if (!condition) ++without;
    if (normal) {
      if (oracle != condition)
        return {false, "oracle and condition disagree on a normal n<=5 instance"};
      ++iff_checked;
      if (condition) {
        MonotoneFn F = extend_isotone(ps, f);
        if (!is_continuous(ps, F) || !is_isotone(ps, F))
          return {false, "constructed extension fails its postconditions"};
      }
    }
  }
  std::ostringstream os;
  os << iff_checked << " normal-ambient instances agree both ways; necessity on "
     << necessity_checked << " instances (" << without << " non-extendible)";
  return {iff_checked >= 250 && without >= 10, os.str()};
}

Outcome criterion5() { return criterion3(true); }

// 6. Utility representation pipeline on at least 200 regular spaces.
Outcome criterion6() {
  size_t done = 0;
  for (const auto& ps : closed_corpus()) {
    if (done >= 220) break;
    if (!classify(ps).regular) continue;
    auto fam = utility_representation(ps);
    if (!verify_representation(ps, fam, RepresentationMode::kRepresent))
      return {false, "family fails to represent the preorder"};
    if (!verify_representation(ps, fam, RepresentationMode::kUtilityFamily))
      return {false, "family member fails the utility predicate"};
    ++done;
  }
  return {done >= 200, std::to_string(done) + " regular spaces represented by utilities"};
}

// 7. Remark equivalences on the full corpus; quotients of closed spaces are
//    closed ordered.
Outcome criterion7() {
  size_t remark = 0, quotients = 0;
  auto check_remark = [&](const PreorderedSpace& ps) -> bool {
    RemarkReport r = check_remark_equivalences(ps);
    ++remark;
    return r.semiclosed_agree() && r.regular_agree() && r.normal_agree() &&
           r.monotone_open_bijection && r.monotone_closed_bijection;
  };
  for (const auto& ps : closed_corpus())
    if (!check_remark(ps)) return {false, "remark equivalence failed on a closed space"};
  for (const auto& ps : mixed_corpus())
    if (!check_remark(ps)) return {false, "remark equivalence failed on a mixed space"};
  for (const auto& ps : closed_corpus()) {
    QuotientClosedReport r = check_quotient_closed(ps);
    if (!r.quotient_closed_preorder) return {false, "quotient lost graph closedness"};
    if (!r.quotient_antisymmetric) return {false, "quotient order not antisymmetric"};
    ++quotients;
  }
  std::ostringstream os;
  os << remark << " equivalence reports, " << quotients << " closed ordered quotients";
  return {true, os.str()};
}

// 8. Streaming separation over 50 generated exhaustions.
Outcome criterion8() {
  Rng rng(kCorpusSeed + 4);
  double worst = 0;
  for (int trial = 0; trial < 50; ++trial) {
    int steps = 2 + static_cast<int>(rng() % 9);  // J <= 10
    Exhaustion exh = random_exhaustion(rng, steps, 8);
    if (!validate_exhaustion(exh).valid) return {false, "generated exhaustion invalid"};
    const auto& last = exh.pieces.back();
    auto [Af, Bf] = random_closed_monotone_pair(rng, last);
    const int J = exh.steps();
    std::vector<PointSet> A(J), B(J);
    for (int j = 0; j < J; ++j) {
      A[j] = exh.pull_back(J - 1, j, Af);
      B[j] = exh.pull_back(J - 1, j, Bf);
    }
    auto t0 = Clock::now();
    SeparationTrace trace = stream_separate(exh, A, B);
    for (int j = 0; j < J; ++j) {
      const auto& st = trace.steps[j];
      const auto& ps = exh.pieces[j];
      bool ok = ps.topology.is_open(st.U) && ps.topology.is_open(st.V) &&
                ps.order.is_decreasing(st.U) && ps.order.is_increasing(st.V) &&
                st.tilde_A.subset_of(st.U) && st.tilde_B.subset_of(st.V) &&
                !st.U.intersects(st.V) &&
                !closed_dec_hull(ps, st.U).intersects(closed_inc_hull(ps, st.V)) &&
                ps.topology.closure(st.tilde_A) == st.tilde_A &&
                ps.topology.closure(st.tilde_B) == st.tilde_B &&
                A[j].subset_of(st.tilde_A) && B[j].subset_of(st.tilde_B);
      if (j + 1 < J)
        ok = ok && exh.push_forward(j, j + 1, st.U).subset_of(trace.steps[j + 1].U) &&
             exh.push_forward(j, j + 1, st.V).subset_of(trace.steps[j + 1].V);
      if (!ok) return {false, "trace invariant violated at step " + std::to_string(j + 1)};
    }
    std::vector<PointSet> U_restr(J), V_restr(J);
    for (int j = 0; j < J; ++j) {
      U_restr[j] = exh.pull_back(J - 1, j, trace.steps[J - 1].U);
      V_restr[j] = exh.pull_back(J - 1, j, trace.steps[J - 1].V);
    }
    if (!limit_open_check(exh, U_restr) || !limit_open_check(exh, V_restr))
      return {false, "limit openness certificate failed"};
    worst = std::max(worst, seconds_since(t0));
  }
  std::ostringstream os;
  os << "50 exhaustions streamed, worst " << worst << " s per exhaustion";
  return {worst < 5.0, os.str()};
}

// 9. The fixture search pair.  The first half asks for a finite analogue of a
// convex semiclosed non-closed space; on finite spaces semiclosedness already
// implies a closed graph (specialization forces order-indifference), so the
// exhaustive search below reports NOT_FOUND honestly — see the project notes.
// When the CLI binary is available the queries run through it, asserting the
// documented exit codes (0 found, 1 not found).
Outcome criterion9() {
  bool first_ok, second_ok;
  if (const char* bin = std::getenv("TPS_BIN")) {
    auto run = [&](const std::string& args) {
      std::string cmd = std::string(bin) + " " + args + " > /dev/null 2>&1";
      return WEXITSTATUS(std::system(cmd.c_str()));
    };
    first_ok = run("find 5 --require semiclosed,convex --forbid closed") == 0;
    second_ok = run("find 5 --require closed --forbid normal") == 1;
  } else {
    SpaceQuery first{{Flag::kSemiclosed, Flag::kConvex}, {Flag::kClosed}};
    first_ok = find_space_exhaustive(5, first).has_value();
    SpaceQuery second{{Flag::kClosed}, {Flag::kNormal}};
    second_ok = !find_space_exhaustive(5, second).has_value();
  }

  std::ostringstream os;
  os << "semiclosed+convex+!closed: " << (first_ok ? "FOUND" : "NOT_FOUND")
     << " (expected FOUND; unattainable: semiclosed implies closed on finite spaces); "
     << "closed+!normal at n<=5: " << (second_ok ? "NOT_FOUND as required" : "FOUND (bad)");
  return {first_ok && second_ok, os.str()};
}

// 10. Alpha identities on constructor outputs plus grid isotonicity.
Outcome criterion10() {
  std::vector<Rational> grid;
  for (int k = 0; k <= 8; ++k) grid.push_back(rat(k, 8));
  for (const auto& x : grid)
    for (const auto& y : grid) {
      if (x == 0 && y == 1) continue;
      for (const auto& x2 : grid)
        if (x <= x2 && !(x2 == 0 && y == 1) &&
            alpha_combine(x, y) > alpha_combine(x2, y))
          return {false, "alpha not isotone in the first argument"};
      for (const auto& y2 : grid)
        if (y <= y2 && !(x == 0 && y2 == 1) &&
            alpha_combine(x, y) > alpha_combine(x, y2))
          return {false, "alpha not isotone in the second argument"};
    }

  size_t merged = 0;
  for (size_t i = 0; i < closed_corpus().size() && merged < 400; ++i) {
    const auto& ps = closed_corpus()[i];
    SpaceAnalysis a = analyze(ps);
    auto pairs = disjoint_pairs(a);
    for (size_t p = 0; p + 1 < pairs.size() && merged < 400; p += 2) {
      MonotoneFn g = urysohn(ps, pairs[p].first, pairs[p].second);
      MonotoneFn h = urysohn(ps, pairs[p + 1].first, pairs[p + 1].second);
      bool corner = false;
      for (int x = 0; x < ps.n(); ++x)
        if (g.at(x) == 0 && h.at(x) == 1) corner = true;
      if (corner) continue;
      MonotoneFn f = combine_alpha(ps, g, h);
      if (f.level_set(Rational(0)) != g.level_set(Rational(0)))
        return {false, "combine_alpha zero set mismatch"};
      if (f.level_set(Rational(1)) != h.level_set(Rational(1)))
        return {false, "combine_alpha one set mismatch"};
      if (!is_continuous(ps, f) || !is_isotone(ps, f))
        return {false, "combine_alpha output not continuous isotone"};
      ++merged;
    }
  }
  return {merged >= 200,
          "grid isotonicity exact; " + std::to_string(merged) + " merges verified"};
}

struct Criterion {
  int id;
  const char* label;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<Criterion> criteria = {
      {1, "closed preorder implies normally preordered (1000 spaces, <60s)", criterion1},
      {2, "pointwise hulls of compacta are closed: d=D, i=I on every subset", criterion2},
      {3, "constructor soundness: urysohn / extensions on every instance", [] { return criterion3(false); }},
      {4, "extension condition is necessary and sufficient at n<=5", criterion4},
      {5, "exact-level-set separation on every pair of every regular space", criterion5},
      {6, "utility representation pipeline on 200 regular spaces", criterion6},
      {7, "quotient equivalences and closed ordered quotients on the corpus", criterion7},
      {8, "streaming separation traces on 50 exhaustions (<5s each)", criterion8},
      {9, "fixture search: semiclosed+convex+!closed and closed+!normal", criterion9},
      {10, "alpha merge identities and grid isotonicity", criterion10},
  };

  int only = argc > 1 ? std::atoi(argv[1]) : 0;
  bool all_pass = true;
  for (auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    Outcome o = c.run();
    std::printf("[%s] criterion %2d: %s — %s\n", o.pass ? "PASS" : "FAIL", c.id, c.label,
                o.detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && o.pass;
  }
  return all_pass ? 0 : 1;
}
