#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "sumfree/errors.hpp"
#include "sumfree/extremal.hpp"
#include "test_support.hpp"

using namespace sumfree;

namespace {

std::vector<std::vector<std::size_t>> members(const MaxSumFreeFamily& f) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& s : f.sets) out.push_back(s.to_vector());
  return out;
}

}  // namespace

TEST_CASE("mu") {
  CHECK(mu(parse_group("Z6")) == Rational(1, 2));
  CHECK(mu(parse_group("Z5")) == Rational(2, 5));
  CHECK(mu(parse_group("Z3xZ11")) == Rational(4, 11));
  CHECK_THROWS_AS(mu(parse_group("Z9")), NotTypeIError);
}

TEST_CASE("enumerate_SF0 examples") {
  using V = std::vector<std::vector<std::size_t>>;
  CHECK(members(enumerate_SF0(parse_group("Z5"))) == V{{1, 4}, {2, 3}});
  CHECK(members(enumerate_SF0(parse_group("Z6"))) == V{{1, 3, 5}});
  CHECK(members(enumerate_SF0(parse_group("Z10"))) == V{{1, 3, 5, 7, 9}});
  CHECK(enumerate_SF0(parse_group("Z2xZ2")).sets.size() == 3);
  CHECK_THROWS_AS(enumerate_SF0(parse_group("Z7")), NotTypeIError);
}

TEST_CASE("enumerate_SF0 matches exhaustive search up to order 16") {
  for (const auto& g : test_support::type_one_groups(16)) {
    const auto brute = oracle::all_maximum_sum_free(oracle::add_table(g.factors()));
    const auto fam = enumerate_SF0(g);
    std::set<std::vector<std::size_t>> got;
    for (const auto& s : fam.sets) got.insert(s.to_vector());
    CHECK_MESSAGE(got == brute, g.to_string());
  }
}

TEST_CASE("family invariants") {
  for (const auto& g : test_support::type_one_groups(60)) {
    const auto fam = enumerate_SF0(g);
    const auto size = mu(g) * static_cast<std::int64_t>(g.order());
    REQUIRE(size.denominator() == 1);
    CHECK(fam.sets.size() <= g.order());
    for (std::size_t i = 0; i < fam.sets.size(); ++i) {
      const auto& b = fam.sets[i];
      CHECK(b.count() == static_cast<std::size_t>(size.numerator()));
      CHECK(is_sum_free(g, b));
      if (i > 0) CHECK(fam.sets[i - 1] < b);
      // B ∪ (B + B) = G
      VertexSet cover = b;
      b.for_each([&](std::size_t x) {
        b.for_each([&](std::size_t y) {
          cover.insert(g.add(static_cast<Element>(x), static_cast<Element>(y)));
        });
      });
      CHECK(cover.count() == g.order());
    }
  }
}

TEST_CASE("cardinality and intersection reports") {
  auto r5 = sf0_cardinality_check(parse_group("Z5"));
  CHECK(r5.family_size == 2);
  CHECK(r5.order_q_count == 4);
  CHECK(r5.ok());
  auto r6 = sf0_cardinality_check(parse_group("Z6"));
  CHECK(r6.family_size == 1);
  CHECK(r6.ok());
  CHECK(sf0_cardinality_check(parse_group("Z2xZ2")).family_size == 3);

  auto i5 = pairwise_intersection_check(enumerate_SF0(parse_group("Z5")));
  CHECK(i5.pairs == 1);
  CHECK(i5.max_intersection == 0);
  CHECK(i5.ceiling == doctest::Approx(1.6));
  CHECK(i5.ok());
  auto i6 = pairwise_intersection_check(enumerate_SF0(parse_group("Z6")));
  CHECK(i6.pairs == 0);
  CHECK(i6.ok());
  auto k4 = pairwise_intersection_check(enumerate_SF0(parse_group("Z2xZ2")));
  CHECK(k4.min_intersection == 1);
  CHECK(k4.max_intersection == 1);
  CHECK(k4.exact_quarter == true);
}

TEST_CASE("delta(H, B)") {
  auto z5 = parse_group("Z5");
  SchurHypergraph h5(z5);
  CHECK(delta_H_B(h5, VertexSet(5, {2, 3})) == 1);
  CHECK(delta_H_B(h5, VertexSet(5)) == 0);
  CHECK_THROWS_AS(delta_H_B(h5, VertexSet::full(5)), DomainError);

  // brute force on small groups
  for (const char* spec : {"Z5", "Z11", "Z2xZ4", "Z10"}) {
    auto g = parse_group(spec);
    SchurHypergraph h(g);
    const auto add = oracle::add_table(g.factors());
    for (const auto& b : enumerate_SF0(g).sets) {
      std::size_t best = SIZE_MAX;
      for (std::size_t v = 0; v < g.order(); ++v) {
        if (b.contains(v)) continue;
        std::set<std::vector<std::size_t>> edges;
        for (std::size_t y = 0; y < g.order(); ++y)
          for (std::size_t z = 0; z < g.order(); ++z) {
            std::vector<std::size_t> t;
            if (add[v][y] == z) t = {v, y, z};
            else if (add[y][z] == v) t = {v, y, z};
            else continue;
            if (y == z || v == y || v == z) continue;
            if (!b.contains(y) || !b.contains(z)) continue;
            std::sort(t.begin(), t.end());
            edges.insert(t);
          }
        best = std::min(best, edges.size());
      }
      CHECK(delta_H_B(h, b) == best);
    }
  }
  // δ-claim on Z35
  auto z35 = parse_group("Z35");
  SchurHypergraph h35(z35);
  for (const auto& b : enumerate_SF0(z35).sets)
    CHECK(static_cast<double>(delta_H_B(h35, b)) >= 35.0 / 10.0 - 0.5);
}

TEST_CASE("stability profile") {
  auto z10 = parse_group("Z10");
  SchurHypergraph h(z10);
  const auto fam = enumerate_SF0(z10);
  auto prof = stability_profile(z10, h, fam, 0.4, ProfileMode::exhaustive());
  CHECK(prof.rows.size() == 848);
  bool saw_b = false;
  for (const auto& r : prof.rows)
    if (r.size == 5 && r.schur_count == 0 && r.min_distance == 0) saw_b = true;
  CHECK(saw_b);
  CHECK_FALSE(prof.frontier.empty());
  for (std::size_t i = 1; i < prof.frontier.size(); ++i) {
    CHECK(prof.frontier[i - 1].distance < prof.frontier[i].distance);
    CHECK(prof.frontier[i - 1].schur_density > prof.frontier[i].schur_density);
  }

  // B ∪ {v} closes at least δ(H,B) edges
  const auto& b = fam.sets[0];
  const std::size_t dl = delta_H_B(h, b);
  for (Element v = 0; v < 10; ++v) {
    if (b.contains(v)) continue;
    VertexSet a = b;
    a.insert(v);
    CHECK(schur_triple_count(h, a) >= dl);
  }

  std::ostringstream os;
  prof.write_csv(os);
  CHECK(os.str().rfind("size,schur_count,min_distance\n", 0) == 0);

  auto sampled = stability_profile(z10, h, fam, 0.4, ProfileMode::sample(200, 3));
  auto again = stability_profile(z10, h, fam, 0.4, ProfileMode::sample(200, 3));
  CHECK(sampled.rows.size() == 200);
  for (std::size_t i = 0; i < sampled.rows.size(); ++i) {
    CHECK(sampled.rows[i].size == again.rows[i].size);
    CHECK(sampled.rows[i].schur_count == again.rows[i].schur_count);
    CHECK(sampled.rows[i].size >= 4);
  }

  CHECK_THROWS_AS(stability_profile(parse_group("Z20"), SchurHypergraph(parse_group("Z20")),
                                    enumerate_SF0(parse_group("Z20")), 0.5,
                                    ProfileMode::exhaustive()),
                  DomainError);
}

TEST_CASE("stability witness") {
  auto z10 = parse_group("Z10");
  SchurHypergraph h(z10);
  const auto fam = enumerate_SF0(z10);
  const auto prof = stability_profile(z10, h, fam, 0.0, ProfileMode::exhaustive());
  const std::size_t e = hypergraph_stats(h).edge_count;
  auto w = stability_witness(prof, 10, e, 0.5, 0.1);
  REQUIRE(w.has_value());
  // verify the returned beta directly
  for (const auto& r : prof.rows) {
    if (static_cast<double>(r.size) < (0.5 - *w) * 10) continue;
    CHECK((static_cast<double>(r.schur_count) >= *w * e || r.min_distance <= 1));
  }
}
