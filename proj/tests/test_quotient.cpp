#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "tps/quotient.hpp"
#include "tps/random_gen.hpp"

using namespace tps;

namespace {

PreorderedSpace discrete_space(int n, std::vector<std::pair<std::string, std::string>> edges) {
  auto names = default_point_names(n);
  std::vector<std::vector<std::string>> gens;
  for (auto& p : names) gens.push_back({p});
  auto t = make_topology(names, gens);
  return PreorderedSpace(t, make_preorder(t, std::move(edges)));
}

}  // namespace

TEST_CASE("indifference class examples") {
  auto total = discrete_space(2, {{"p0", "p1"}, {"p1", "p0"}});
  CHECK(indifference_classes(total).size() == 1);

  auto chain = discrete_space(2, {{"p0", "p1"}});
  CHECK(indifference_classes(chain).size() == 2);

  auto mixed = discrete_space(3, {{"p0", "p1"}, {"p1", "p0"}});
  auto classes = indifference_classes(mixed);
  CHECK(classes.size() == 2);
  CHECK(classes[0] == PointSet::of({0, 1}));
  CHECK(classes[1] == PointSet::single(2));
}

TEST_CASE("quotient space examples") {
  auto t = make_topology({"a", "b"}, {});
  PreorderedSpace total(t, make_preorder(t, {{"a", "b"}, {"b", "a"}}));
  QuotientPresentation q = quotient_space(total);
  CHECK(q.space.n() == 1);
  CHECK(q.space.topology.name(0) == "a+b");

  auto chain = discrete_space(2, {{"p0", "p1"}});
  QuotientPresentation qc = quotient_space(chain);
  CHECK(qc.space.n() == 2);
  CHECK(qc.space.order.leq(qc.projection[0], qc.projection[1]));

  // a ~ b glued below c; topology generated by {c} on {a,b,c}.
  auto t2 = make_topology({"a", "b", "c"}, {{"c"}});
  PreorderedSpace glued(
      t2, make_preorder(t2, {{"a", "b"}, {"b", "a"}, {"a", "c"}}));
  QuotientPresentation qg = quotient_space(glued);
  CHECK(qg.space.n() == 2);
  int ab = qg.projection[0], c = qg.projection[2];
  CHECK(qg.space.order.leq(ab, c));
  CHECK_FALSE(qg.space.order.leq(c, ab));
  CHECK(qg.space.topology.is_open(PointSet::single(c)));
  CHECK_FALSE(qg.space.topology.is_open(PointSet::single(ab)));
}

TEST_CASE("projection relates points exactly as the quotient order") {
  Rng rng(139);
  for (int trial = 0; trial < 150; ++trial) {
    int n = 1 + static_cast<int>(rng() % 6);
    PreorderedSpace ps = random_space(rng, n);
    QuotientPresentation q = quotient_space(ps);
    CHECK(q.space.order.is_antisymmetric());
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        CHECK(ps.order.leq(x, y) == q.space.order.leq(q.projection[x], q.projection[y]));
    for (const auto& o : q.space.topology.opens()) {
      PointSet pre;
      for (int x = 0; x < n; ++x)
        if (o.contains(q.projection[x])) pre.add(x);
      CHECK(ps.topology.is_open(pre));
    }
  }
}

TEST_CASE("remark equivalences hold on closed preordered spaces") {
  Rng rng(149);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + static_cast<int>(rng() % 5);
    PreorderedSpace ps = random_closed_space(rng, n);
    RemarkReport r = check_remark_equivalences(ps);
    CHECK(r.all_hold());
  }
}

TEST_CASE("remark equivalences hold on arbitrary spaces") {
  Rng rng(151);
  for (int trial = 0; trial < 150; ++trial) {
    int n = 1 + static_cast<int>(rng() % 6);
    PreorderedSpace ps = random_space(rng, n);
    RemarkReport r = check_remark_equivalences(ps);
    CHECK(r.semiclosed_agree());
    CHECK(r.regular_agree());
    CHECK(r.normal_agree());
    CHECK(r.monotone_open_bijection);
    CHECK(r.monotone_closed_bijection);
  }
}

TEST_CASE("remark equivalences on the named fixtures") {
  auto t = make_topology({"a", "b"}, {{"a"}});
  PreorderedSpace sp(t, make_preorder(t, {}));  // not semiclosed
  RemarkReport r = check_remark_equivalences(sp);
  CHECK_FALSE(r.ambient_semiclosed);
  CHECK_FALSE(r.quotient_semiclosed);
  CHECK(r.all_hold());

  auto ind = make_topology({"a", "b"}, {});
  PreorderedSpace total(ind, make_preorder(ind, {{"a", "b"}, {"b", "a"}}));
  RemarkReport r2 = check_remark_equivalences(total);
  CHECK(r2.ambient_normal);
  CHECK(r2.quotient_normal);
}

TEST_CASE("quotients of closed preordered spaces are closed ordered") {
  auto chain = discrete_space(2, {{"p0", "p1"}});
  QuotientClosedReport r = check_quotient_closed(chain);
  CHECK(r.holds());

  auto ind = make_topology({"a", "b"}, {});
  PreorderedSpace total(ind, make_preorder(ind, {{"a", "b"}, {"b", "a"}}));
  CHECK(check_quotient_closed(total).holds());

  Rng rng(157);
  for (int trial = 0; trial < 500; ++trial) {
    int n = 2 + static_cast<int>(rng() % 5);
    PreorderedSpace ps = random_closed_space(rng, n);
    CHECK(check_quotient_closed(ps).holds());
  }
}

TEST_CASE("quotient by map examples") {
  auto d3 = make_topology({"a", "b", "c"}, {{"a"}, {"b"}, {"c"}});
  std::vector<int> id{0, 1, 2};
  CHECK(quotient_matches(d3, d3.point_names(), id, d3));

  // Disjoint union of all singleton subspaces of a discrete space glues back.
  std::vector<FiniteTopology> singles;
  for (int i = 0; i < 3; ++i) singles.push_back(subspace(d3, PointSet::single(i)));
  FiniteTopology du = disjoint_union(singles);
  std::vector<int> glue(du.n());
  for (int i = 0; i < du.n(); ++i) glue[i] = d3.index_of(du.name(i).substr(0, 1));
  CHECK(quotient_matches(du, d3.point_names(), glue, d3));

  // Two compact pieces covering the Sierpinski space glue back as well.
  auto sp = make_topology({"a", "b"}, {{"a"}});
  std::vector<FiniteTopology> cover{subspace(sp, PointSet::of({0, 1})),
                                    subspace(sp, PointSet::single(0))};
  FiniteTopology du2 = disjoint_union(cover);
  std::vector<int> glue2(du2.n());
  for (int i = 0; i < du2.n(); ++i) glue2[i] = sp.index_of(du2.name(i).substr(0, 1));
  CHECK(quotient_matches(du2, sp.point_names(), glue2, sp));

  CHECK_THROWS_AS(quotient_by_map(d3, {"x", "y"}, {0, 0, 0}), InvalidSpace);
}

TEST_CASE("every finite space is recovered by gluing its subspace cover") {
  Rng rng(163);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 1 + static_cast<int>(rng() % 4);
    FiniteTopology t = random_topology(rng, n);
    // Cover by all minimal-neighborhood subspaces plus the whole space.
    std::vector<FiniteTopology> pieces;
    std::vector<std::vector<int>> maps;
    for (int x = 0; x < n; ++x) {
      Subspace s = subspace_with_map(t, t.minimal_neighborhood(x));
      pieces.push_back(s.topology);
      maps.push_back(s.to_ambient);
    }
    pieces.push_back(t);
    std::vector<int> idmap(n);
    for (int i = 0; i < n; ++i) idmap[i] = i;
    maps.push_back(idmap);

    FiniteTopology du = disjoint_union(pieces);
    std::vector<int> glue;
    for (size_t c = 0; c < pieces.size(); ++c)
      for (int i = 0; i < pieces[c].n(); ++i) glue.push_back(maps[c][i]);
    CHECK(quotient_matches(du, t.point_names(), glue, t));
  }
}
