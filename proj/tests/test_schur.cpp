#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "oracles.hpp"
#include "sumfree/errors.hpp"
#include "sumfree/random.hpp"
#include "sumfree/schur.hpp"

using namespace sumfree;

namespace {

VertexSet set_of(const GroupSpec& g, std::initializer_list<std::size_t> xs) {
  return VertexSet(g.order(), xs);
}

// All edges {x,y,z} (distinct, x + y = z) by brute force.
std::set<std::vector<std::size_t>> brute_edges(const GroupSpec& g) {
  const auto add = oracle::add_table(g.factors());
  std::set<std::vector<std::size_t>> e;
  for (std::size_t x = 0; x < g.order(); ++x)
    for (std::size_t y = 0; y < g.order(); ++y) {
      const std::size_t z = add[x][y];
      if (x == y || z == x || z == y) continue;
      std::vector<std::size_t> t{x, y, z};
      std::sort(t.begin(), t.end());
      e.insert(t);
    }
  return e;
}

}  // namespace

TEST_CASE("is_sum_free and is_independent examples") {
  auto z6 = parse_group("Z6");
  auto z5 = parse_group("Z5");
  CHECK(is_sum_free(z6, set_of(z6, {1, 3, 5})));
  CHECK(is_sum_free(z5, set_of(z5, {2, 3})));
  CHECK(is_sum_free(z5, VertexSet(5)));
  CHECK_FALSE(is_sum_free(parse_group("Z4"), set_of(parse_group("Z4"), {1, 2})));

  CHECK(is_independent(SchurHypergraph(z6), set_of(z6, {1, 3, 5})));
  auto z4 = parse_group("Z4");
  CHECK(is_independent(SchurHypergraph(z4), set_of(z4, {1, 2})));
  CHECK_FALSE(is_independent(SchurHypergraph(z4, true), set_of(z4, {1, 2})));
  CHECK_FALSE(is_independent(SchurHypergraph(z5), set_of(z5, {1, 2, 3})));
}

TEST_CASE("edges, co-degrees and degrees match brute force") {
  for (const char* spec : {"Z5", "Z6", "Z7", "Z8", "Z2xZ4", "Z3xZ3", "Z10", "Z2xZ2xZ3", "Z12"}) {
    auto g = parse_group(spec);
    SchurHypergraph h(g);
    const auto edges = brute_edges(g);
    const auto st = hypergraph_stats(h);
    CHECK(st.edge_count == edges.size());
    CHECK(schur_triple_count(h, VertexSet::full(g.order())) == edges.size());
    std::vector<std::size_t> deg(g.order(), 0);
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> co;
    for (const auto& e : edges) {
      for (auto v : e) ++deg[v];
      ++co[{e[0], e[1]}];
      ++co[{e[0], e[2]}];
      ++co[{e[1], e[2]}];
    }
    CHECK(st.degrees == deg);
    std::size_t d2 = 0;
    for (const auto& [k, v] : co) d2 = std::max(d2, v);
    CHECK(st.delta2 == d2);
    CHECK(delta2(h) == d2);
  }
  auto z5 = parse_group("Z5");
  SchurHypergraph h5(z5);
  CHECK(hypergraph_stats(h5).edge_count == 6);
  CHECK(delta2(h5) == 3);
  CHECK(schur_triple_count(h5, set_of(z5, {1, 2, 3})) == 1);
  CHECK(schur_triple_count(h5, set_of(z5, {1, 2})) == 0);
}

TEST_CASE("delta2 never exceeds 3") {
  for (std::uint32_t n = 2; n <= 60; ++n) CHECK(delta2(SchurHypergraph(GroupSpec({n}))) <= 3);
  for (const char* spec : {"Z2xZ2xZ2", "Z2xZ4xZ6", "Z3xZ3xZ5", "Z6xZ10"})
    CHECK(delta2(SchurHypergraph(parse_group(spec))) <= 3);
}

TEST_CASE("sum-free implies independent on random subsets") {
  Rng rng(99);
  for (std::uint32_t n = 3; n <= 40; ++n) {
    GroupSpec g({n});
    SchurHypergraph h(g);
    const auto table = oracle::add_table(g.factors());
    for (int t = 0; t < 250; ++t) {
      VertexSet a(n);
      const double p = rng.uniform() * 0.5;
      for (std::size_t x = 0; x < n; ++x)
        if (rng.uniform() < p) a.insert(x);
      std::vector<std::size_t> v = a.to_vector();
      const bool sf = is_sum_free(g, a);
      CHECK(sf == oracle::sum_free(table, v));
      if (sf) CHECK(is_independent(h, a));
    }
  }
}

TEST_CASE("link graphs") {
  auto z5 = parse_group("Z5");
  SchurHypergraph h(z5);
  auto empty_link = link_graph(h, VertexSet(5), VertexSet::full(5));
  CHECK(empty_link.edge_count() == 0);

  auto l1 = link_graph_full(h, set_of(z5, {1}));
  std::set<std::pair<std::size_t, std::size_t>> got;
  for (std::size_t u = 0; u < 5; ++u)
    l1.neighbors(u).for_each([&](std::size_t v) {
      if (u < v) got.insert({u, v});
    });
  const std::set<std::pair<std::size_t, std::size_t>> expected{{0, 4}, {2, 3}, {2, 4}, {3, 4}};
  CHECK(got == expected);

  Rng rng(5);
  for (const char* spec : {"Z11", "Z12", "Z2xZ8", "Z20"}) {
    auto g = parse_group(spec);
    SchurHypergraph hh(g);
    const std::size_t d2 = delta2(hh);
    for (int t = 0; t < 20; ++t) {
      VertexSet tset(g.order()), a(g.order());
      for (std::size_t x = 0; x < g.order(); ++x) {
        if (rng.uniform() < 0.2) tset.insert(x);
        if (rng.uniform() < 0.7) a.insert(x);
      }
      auto full = link_graph_full(hh, tset);
      CHECK(full.max_degree() <= tset.count() * d2);
      // link graph on A equals the induced subgraph of the full link graph
      auto la = link_graph(hh, tset, a);
      CHECK(la.edge_count() == full.edge_count(a));
    }
    // Σ_{z∈A} e(G_z[A]) = 3 e(H[A])
    for (int t = 0; t < 10; ++t) {
      VertexSet a(g.order());
      for (std::size_t x = 0; x < g.order(); ++x)
        if (rng.uniform() < 0.6) a.insert(x);
      std::size_t sum = 0;
      a.for_each([&](std::size_t z) { sum += link_edge_count(hh, static_cast<Element>(z), a); });
      CHECK(sum == 3 * schur_triple_count(hh, a));
      a.for_each([&](std::size_t z) {
        VertexSet zs(g.order(), {z});
        CHECK(link_edge_count(hh, static_cast<Element>(z), a) ==
              link_graph(hh, zs, a).edge_count());
      });
    }
  }
}

TEST_CASE("Cayley graphs G*_S") {
  auto z6 = parse_group("Z6");
  auto c6 = cayley_graph_star(z6, set_of(z6, {1}), CayleyVertexMode::full);
  CHECK(c6.regular_degree() == 2u);
  CHECK(c6.is_connected());
  CHECK(c6.edge_count() == 6);
  auto z5 = parse_group("Z5");
  CHECK(cayley_graph_star(z5, set_of(z5, {2, 3}), CayleyVertexMode::full).regular_degree() == 2u);
  CHECK(cayley_graph_star(z5, VertexSet(5), CayleyVertexMode::full).edge_count() == 0);
  CHECK_THROWS_AS(cayley_graph_star(z5, set_of(z5, {0, 1}), CayleyVertexMode::full), DomainError);

  auto ex = cayley_graph_star(z6, set_of(z6, {1}), CayleyVertexMode::exclude_S);
  CHECK(ex.size() == 5);
  CHECK(ex.labels() == std::vector<std::uint32_t>{0, 2, 3, 4, 5});

  Rng rng(17);
  for (std::uint32_t n = 3; n <= 24; ++n) {
    GroupSpec g({n});
    for (int t = 0; t < 10; ++t) {
      VertexSet s(n);
      for (std::size_t x = 1; x < n; ++x)
        if (rng.uniform() < 0.3) s.insert(x);
      VertexSet sym = s;
      s.for_each([&](std::size_t x) { sym.insert(g.neg(static_cast<Element>(x))); });
      auto gr = cayley_graph_star(g, s, CayleyVertexMode::full);
      CHECK(gr.regular_degree() == sym.count());
      CHECK(gr.is_symmetric());
    }
  }
}
