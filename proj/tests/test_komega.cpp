#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "tps/komega.hpp"
#include "tps/random_gen.hpp"

using namespace tps;

namespace {

PreorderedSpace discrete_chain(int n) {
  auto names = default_point_names(n);
  std::vector<std::vector<std::string>> gens;
  for (auto& p : names) gens.push_back({p});
  std::vector<std::pair<std::string, std::string>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(names[i], names[i + 1]);
  auto t = make_topology(names, gens);
  return PreorderedSpace(t, make_preorder(t, edges));
}

// K_1 = {p0} in K_2 = {p0,p1} in K_3 = {p0,p1,p2}, all discrete chains.
Exhaustion growing_chains() {
  Exhaustion exh;
  exh.pieces.push_back(discrete_chain(1));
  exh.pieces.push_back(discrete_chain(2));
  exh.pieces.push_back(discrete_chain(3));
  exh.inclusions.push_back({0});
  exh.inclusions.push_back({0, 1});
  return exh;
}

void check_trace_invariants(const Exhaustion& exh, const SeparationTrace& trace,
                            const std::vector<PointSet>& A, const std::vector<PointSet>& B) {
  const int J = exh.steps();
  REQUIRE(static_cast<int>(trace.steps.size()) == J);
  for (int j = 0; j < J; ++j) {
    const auto& st = trace.steps[j];
    const auto& ps = exh.pieces[j];
    // Targets closed monotone, containing the inputs.
    CHECK(ps.topology.closure(st.tilde_A) == st.tilde_A);
    CHECK(ps.order.is_decreasing(st.tilde_A));
    CHECK(ps.topology.closure(st.tilde_B) == st.tilde_B);
    CHECK(ps.order.is_increasing(st.tilde_B));
    CHECK(A[j].subset_of(st.tilde_A));
    CHECK(B[j].subset_of(st.tilde_B));
    // Separators open monotone with hull-strengthened disjointness.
    CHECK(ps.topology.is_open(st.U));
    CHECK(ps.topology.is_open(st.V));
    CHECK(ps.order.is_decreasing(st.U));
    CHECK(ps.order.is_increasing(st.V));
    CHECK(st.tilde_A.subset_of(st.U));
    CHECK(st.tilde_B.subset_of(st.V));
    CHECK_FALSE(closed_dec_hull(ps, st.U).intersects(closed_inc_hull(ps, st.V)));
    if (j + 1 < J) {
      CHECK(exh.push_forward(j, j + 1, st.U).subset_of(trace.steps[j + 1].U));
      CHECK(exh.push_forward(j, j + 1, st.V).subset_of(trace.steps[j + 1].V));
    }
  }
  // Final-level coverage and disjointness.
  CHECK(A[J - 1].subset_of(trace.steps[J - 1].U));
  CHECK(B[J - 1].subset_of(trace.steps[J - 1].V));
  CHECK_FALSE(trace.steps[J - 1].U.intersects(trace.steps[J - 1].V));
  // k_omega openness certificate for the limit sets' restrictions.
  std::vector<PointSet> U_restr, V_restr;
  for (int j = 0; j < J; ++j) {
    U_restr.push_back(exh.pull_back(J - 1, j, trace.steps[J - 1].U));
    V_restr.push_back(exh.pull_back(J - 1, j, trace.steps[J - 1].V));
  }
  CHECK(limit_open_check(exh, U_restr));
  CHECK(limit_open_check(exh, V_restr));
}

std::pair<std::vector<PointSet>, std::vector<PointSet>> restrict_targets(
    const Exhaustion& exh, const PointSet& A_final, const PointSet& B_final) {
  const int J = exh.steps();
  std::vector<PointSet> A(J), B(J);
  for (int j = 0; j < J; ++j) {
    A[j] = exh.pull_back(J - 1, j, A_final);
    B[j] = exh.pull_back(J - 1, j, B_final);
  }
  return {A, B};
}

}  // namespace

TEST_CASE("validate_exhaustion accepts the named fixtures") {
  Exhaustion single;
  single.pieces.push_back(discrete_chain(3));
  CHECK(validate_exhaustion(single).valid);

  CHECK(validate_exhaustion(growing_chains()).valid);
}

TEST_CASE("validate_exhaustion reports induced-structure mismatches with the step") {
  Exhaustion bad = growing_chains();
  // Replace the middle piece with an indiscrete two-point space: the induced
  // topology from K_3 is discrete, so coherence fails at step 2.
  auto ind = make_topology({"p0", "p1"}, {});
  bad.pieces[1] = PreorderedSpace(ind, make_preorder(ind, {{"p0", "p1"}}));
  ExhaustionReport r = validate_exhaustion(bad);
  CHECK_FALSE(r.valid);
  CHECK(r.failing_step == 2);
}

TEST_CASE("validate_exhaustion rejects non-closed pieces") {
  Exhaustion bad;
  auto t = make_topology({"a", "b"}, {{"a"}});
  bad.pieces.emplace_back(t, make_preorder(t, {}));
  ExhaustionReport r = validate_exhaustion(bad);
  CHECK_FALSE(r.valid);
  CHECK(r.failing_step == 1);
}

TEST_CASE("single-piece streaming matches direct separation on separability") {
  auto ps = discrete_chain(3);
  Exhaustion exh;
  exh.pieces.push_back(ps);
  std::vector<PointSet> A{ps.order.down(0)}, B{ps.order.up(2)};
  SeparationTrace trace = stream_separate(exh, A, B);
  check_trace_invariants(exh, trace, A, B);
  SeparatorPair direct = separate(ps, A[0], B[0]);
  CHECK(direct.U.subset_of(trace.steps[0].U));
  CHECK(direct.V.subset_of(trace.steps[0].V));
}

TEST_CASE("growing chains stream with nested separators") {
  Exhaustion exh = growing_chains();
  // A = {p0} at every level, B = the top element of the final piece.
  auto [A, B] = restrict_targets(exh, PointSet::single(0), PointSet::single(2));
  SeparationTrace trace = stream_separate(exh, A, B);
  check_trace_invariants(exh, trace, A, B);
}

TEST_CASE("empty A side streams with empty separators allowed") {
  Exhaustion exh = growing_chains();
  auto [A, B] = restrict_targets(exh, PointSet::empty_set(), PointSet::single(2));
  SeparationTrace trace = stream_separate(exh, A, B);
  check_trace_invariants(exh, trace, A, B);
  CHECK(trace.steps[0].U.empty());
}

TEST_CASE("stream_separate validates target coherence") {
  Exhaustion exh = growing_chains();
  std::vector<PointSet> A{PointSet::empty_set(), PointSet::single(0), PointSet::empty_set()};
  std::vector<PointSet> B{PointSet::empty_set(), PointSet::empty_set(), PointSet::empty_set()};
  CHECK_THROWS_AS(stream_separate(exh, A, B), InvalidInput);  // A_2 not A_3 ∩ K_2
}

TEST_CASE("limit_open_check examples") {
  Exhaustion exh = growing_chains();
  std::vector<PointSet> empties{PointSet::empty_set(), PointSet::empty_set(),
                                PointSet::empty_set()};
  CHECK(limit_open_check(exh, empties));

  std::vector<PointSet> incoherent{PointSet::single(0), PointSet::empty_set(),
                                   PointSet::empty_set()};
  CHECK_THROWS_AS(limit_open_check(exh, incoherent), InvalidInput);
}

TEST_CASE("limit_open_check fails on a non-open member") {
  // Chain topology on two points: {p1} is not open in K_2 = {0,{p0},{p0,p1}}.
  // The only closed preorder on this topology glues p0 and p1.
  auto t2 = make_topology({"p0", "p1"}, {{"p0"}});
  PreorderedSpace k2(t2, make_preorder(t2, {{"p0", "p1"}, {"p1", "p0"}}));
  REQUIRE(is_closed_preorder(k2));
  auto t1 = make_topology({"p1"}, {{"p1"}});
  PreorderedSpace k1(t1, make_preorder(t1, {}));
  Exhaustion exh;
  exh.pieces.push_back(k1);
  exh.pieces.push_back(k2);
  exh.inclusions.push_back({1});
  REQUIRE(validate_exhaustion(exh).valid);
  std::vector<PointSet> family{PointSet::single(0), PointSet::single(1)};
  CHECK_FALSE(limit_open_check(exh, family));
}

TEST_CASE("streaming invariants on random exhaustions") {
  Rng rng(167);
  for (int trial = 0; trial < 30; ++trial) {
    Exhaustion exh = random_exhaustion(rng, 2 + static_cast<int>(rng() % 4), 7);
    REQUIRE(validate_exhaustion(exh).valid);
    const auto& last = exh.pieces.back();
    auto [Af, Bf] = random_closed_monotone_pair(rng, last);
    auto [A, B] = restrict_targets(exh, Af, Bf);
    SeparationTrace trace = stream_separate(exh, A, B);
    check_trace_invariants(exh, trace, A, B);
  }
}

TEST_CASE("single-piece stream_extend reduces to pinned extension") {
  auto ps = discrete_chain(3);
  Exhaustion exh;
  exh.pieces.push_back(ps);
  PartialFn f;
  f.domain = PointSet::single(1);
  f.values[1] = rat(1, 2);
  std::vector<PointSet> D{ps.order.down(0)}, I{ps.order.up(2)};
  MonotoneFn F = stream_extend(exh, f, D, I);
  MonotoneFn direct = extend_with_pinning(ps, f, D[0], I[0]);
  CHECK(F == direct);
}

TEST_CASE("growing chains extend with pinned endpoints at each level") {
  Exhaustion exh = growing_chains();
  PartialFn f;  // f(p0) = 0 on K_1
  f.domain = PointSet::single(0);
  f.values[0] = Rational(0);
  auto [D, I] = restrict_targets(exh, PointSet::single(0), PointSet::single(2));
  MonotoneFn F = stream_extend(exh, f, D, I);
  const auto& last = exh.pieces.back();
  CHECK(F.at(0) == Rational(0));
  CHECK(F.at(2) == Rational(1));
  CHECK(is_continuous(last, F));
  CHECK(is_isotone(last, F));
  // Restrictions to earlier pieces stay continuous isotone.
  for (int j = 0; j + 1 < exh.steps(); ++j) {
    PreorderedSubspace sub =
        preordered_subspace(last, exh.push_forward(j, exh.steps() - 1,
                                                   exh.pieces[j].topology.full_set()));
    std::vector<Rational> vals;
    for (int amb : sub.to_ambient) vals.push_back(F.at(amb));
    MonotoneFn restricted{std::move(vals)};
    CHECK(is_continuous(sub.space, restricted));
    CHECK(is_isotone(sub.space, restricted));
  }
}

TEST_CASE("constant function extends through an exhaustion with empty pins") {
  Exhaustion exh = growing_chains();
  PartialFn f;
  f.domain = PointSet::single(0);
  f.values[0] = rat(1, 2);
  std::vector<PointSet> empty(3, PointSet::empty_set());
  MonotoneFn F = stream_extend(exh, f, empty, empty);
  CHECK(F.at(0) == rat(1, 2));
}

TEST_CASE("thresholding the streamed extension separates at the final level") {
  Rng rng(173);
  for (int trial = 0; trial < 25; ++trial) {
    Exhaustion exh = random_exhaustion(rng, 2 + static_cast<int>(rng() % 3), 6);
    const auto& last = exh.pieces.back();
    auto [Df, If] = random_closed_monotone_pair(rng, last);
    auto [D, I] = restrict_targets(exh, Df, If);
    PartialFn f;  // K = empty
    MonotoneFn F = stream_extend(exh, f, D, I);
    PointSet U, V;
    for (int x = 0; x < last.n(); ++x) {
      if (F.at(x) < rat(1, 2)) U.add(x);
      if (F.at(x) > rat(1, 2)) V.add(x);
    }
    CHECK(SeparatorPair{U, V}.valid_for(last, Df, If));
  }
}
