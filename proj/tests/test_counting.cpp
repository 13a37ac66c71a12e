#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "oracles.hpp"
#include "sumfree/counting.hpp"
#include "sumfree/errors.hpp"
#include "sumfree/random.hpp"
#include "test_support.hpp"

using namespace sumfree;

namespace {

std::vector<ExactCount> counts(std::initializer_list<int> v) {
  std::vector<ExactCount> out;
  for (int x : v) out.emplace_back(x);
  return out;
}

DenseGraph random_graph(std::size_t n, double p, Rng& rng) {
  DenseGraph g(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (rng.uniform() < p) g.add_edge(u, v);
  return g;
}

/// Brute-force sum-free predicate on residue tuples. Group sense forbids any
/// x + y = z in A (x = y allowed); hypergraph sense only distinct triples.
bool sum_free_oracle(const oracle::Table& add, const std::vector<std::size_t>& a, bool group_sense) {
  std::vector<bool> in(add.size(), false);
  for (auto x : a) in[x] = true;
  for (auto x : a)
    for (auto y : a) {
      const auto z = add[x][y];
      if (!in[z]) continue;
      if (group_sense) return false;
      if (x != y && z != x && z != y) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("binomials") {
  CHECK(binom_exact(5, 2) == 10);
  CHECK(binom_exact(3, 5) == 0);
  CHECK(binom_exact(100, 50) == ExactCount("100891344545564193334812497256"));
  for (std::uint64_t a = 0; a <= 40; ++a)
    for (std::uint64_t b = 0; b <= a; ++b)
      CHECK(binom_log(static_cast<double>(a), b) ==
            doctest::Approx(std::log(binom_exact(a, b).convert_to<double>())).epsilon(1e-10));
  CHECK(binom_log(3.0, 5) == -std::numeric_limits<double>::infinity());
  CHECK(binom_log(2.5, 2) == doctest::Approx(std::log(2.5 * 1.5 / 2)));
}

TEST_CASE("independent-set counts") {
  CHECK(count_independent_sets(cycle_graph(5), 2) == 5);
  CHECK(independent_set_counts(complete_bipartite(4, 4)) ==
        counts({1, 8, 12, 8, 2, 0, 0, 0, 0}));
  CHECK(independence_number(cycle_graph(7)) == 3);
  CHECK(independence_number(complete_bipartite(4, 6)) == 6);

  Rng rng(17);
  for (int rep = 0; rep < 40; ++rep) {
    const std::size_t n = 1 + rng.below(16);
    const auto g = random_graph(n, rng.uniform(), rng);
    const auto all = independent_set_counts(g);
    REQUIRE(all.size() == n + 1);
    std::size_t alpha = 0;
    for (std::size_t m = 0; m <= n; ++m) {
      const auto want = oracle::count_subsets(n, m, [&](const std::vector<std::size_t>& s) {
        for (auto u : s)
          for (auto v : s)
            if (u < v && g.has_edge(u, v)) return false;
        return true;
      });
      REQUIRE(all[m] == want);
      CHECK(count_independent_sets(g, m) == want);
      if (want > 0) alpha = m;
    }
    CHECK(independence_number(g) == alpha);
  }
}

TEST_CASE("sum-free counts: frozen values") {
  const auto z5 = parse_group("Z5"), z6 = parse_group("Z6"), z10 = parse_group("Z10"),
             z12 = parse_group("Z12");
  CHECK(count_sum_free(z5, 2) == 2);
  CHECK(count_sum_free(z5, 2, SumFreeMode::hypergraph_sense) == 10);
  CHECK(count_sum_free(z6, 3) == 1);
  CHECK(count_sum_free(z6, 3, SumFreeMode::hypergraph_sense) == 12);
  CHECK(count_sum_free(z10, 2) == 28);
  CHECK(count_sum_free(z10, 3) == 24);
  CHECK(count_sum_free(z10, 4) == 7);
  CHECK(count_sum_free(z10, 5) == 1);
  CHECK(count_sum_free(z10, 3, SumFreeMode::hypergraph_sense) == 88);
  CHECK(sum_free_counts(z12) == counts({1, 11, 46, 61, 24, 6, 1, 0, 0, 0, 0, 0, 0}));
  CHECK(sum_free_counts(z12, SumFreeMode::hypergraph_sense) ==
        counts({1, 12, 66, 170, 153, 22, 1, 0, 0, 0, 0, 0, 0}));
}

TEST_CASE("sum-free counts match the residue oracle") {
  for (const auto& g : test_support::factor_lists(16)) {
    const auto add = oracle::add_table(g.factors());
    const auto group = sum_free_counts(g, SumFreeMode::group_sense);
    const auto hyper = sum_free_counts(g, SumFreeMode::hypergraph_sense);
    for (std::size_t m = 0; m <= g.order(); ++m) {
      REQUIRE(group[m] == oracle::count_subsets(g.order(), m, [&](const auto& a) {
                return sum_free_oracle(add, a, true);
              }));
      REQUIRE(hyper[m] == oracle::count_subsets(g.order(), m, [&](const auto& a) {
                return sum_free_oracle(add, a, false);
              }));
    }
  }
}

TEST_CASE("counts do not depend on workers or extension order") {
  Rng rng(3);
  for (const char* name : {"Z14", "Z4xZ4", "Z17", "Z2xZ2xZ5"}) {
    const auto g = parse_group(name);
    const auto base = sum_free_counts(g);
    for (unsigned workers : {2u, 3u}) {
      SearchOptions o;
      o.workers = workers;
      CHECK(sum_free_counts(g, SumFreeMode::group_sense, o) == base);
    }
    SearchOptions o;
    for (std::uint32_t x = 0; x < g.order(); ++x) o.order.push_back(x);
    shuffle(o.order, rng);
    CHECK(sum_free_counts(g, SumFreeMode::group_sense, o) == base);
    CHECK(count_sum_free(g, 4, SumFreeMode::group_sense, o) == base[4]);
  }
  SearchOptions bad;
  bad.order = {0, 1, 2};
  CHECK_THROWS_AS(sum_free_counts(parse_group("Z5"), SumFreeMode::group_sense, bad), DomainError);
}

TEST_CASE("node budget") {
  SearchOptions o;
  o.budget_nodes = 50;
  CHECK_THROWS_AS(count_sum_free(parse_group("Z30"), 8, SumFreeMode::group_sense, o), BudgetExhausted);
  CHECK_THROWS_AS(count_independent_sets(cycle_graph(40), 10, o), BudgetExhausted);
  try {
    count_sum_free(parse_group("Z30"), 8, SumFreeMode::group_sense, o);
  } catch (const BudgetExhausted& e) {
    CHECK(e.nodes() > 50);
  }
}

TEST_CASE("Janson statistics") {
  std::vector<VertexSet> c5;
  for (std::size_t v = 0; v < 5; ++v) c5.push_back(VertexSet(5, {v, (v + 1) % 5}));
  const auto st = janson_stats(c5, 2, 5);
  CHECK(st.mu == doctest::Approx(5 * 0.16));
  CHECK(janson_mu_exact(c5, 2, 5) == ExactProbability(4, 5));
  // ordered intersecting pairs: 10, each with |U_i ∪ U_j| = 3
  CHECK(st.delta_sum == doctest::Approx(10 * std::pow(0.4, 3)));
  CHECK(exact_no_Ui_probability(c5, 2, 5) == ExactProbability(1, 2));

  const std::vector<VertexSet> two = {VertexSet(6, {0, 1}), VertexSet(6, {1, 2})};
  const auto s2 = janson_stats(two, 3, 6);
  CHECK(s2.delta_sum == doctest::Approx(2 * std::pow(0.5, 3)));

  const std::vector<VertexSet> disjoint = {VertexSet(6, {0, 1}), VertexSet(6, {2, 3})};
  const auto sd = janson_stats(disjoint, 3, 6);
  const auto bd = janson_bounds(sd);
  CHECK(sd.delta_sum == 0.0);
  CHECK(bd.delta_zero_guard);
  CHECK(bd.max_form == doctest::Approx(std::exp(-sd.mu / 2)));
  CHECK(bd.transfer_factor == doctest::Approx(3 * std::sqrt(3.0)));
  CHECK(janson_bounds(sd, PittelConstant::abstract_C(2.0)).transfer_factor == 2.0);
  CHECK(janson_bounds(janson_stats(disjoint, 0, 6)).transfer_factor == 1.0);

  CHECK_THROWS_AS(janson_stats({VertexSet(6)}, 2, 6), DomainError);
  CHECK_THROWS_AS(janson_stats(disjoint, 7, 6), DomainError);
  CHECK_THROWS_AS(exact_no_Ui_probability(two, 30, 60, 1000), DomainError);

  // the Janson product bound dominates the exact probability under the
  // binomial model, and the transferred bound dominates it for m-subsets
  Rng rng(9);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t n = 8 + rng.below(8);
    std::vector<VertexSet> fam;
    for (int k = 0; k < 6; ++k) {
      VertexSet u(n);
      while (u.count() < 2 + rng.below(2)) u.insert(rng.below(n));
      fam.push_back(u);
    }
    const std::size_t m = 1 + rng.below(n - 1);
    const auto b = janson_bounds(janson_stats(fam, m, n));
    const auto exact = exact_no_Ui_probability(fam, m, n);
    const double pr = exact.numerator().convert_to<double>() / exact.denominator().convert_to<double>();
    CHECK(pr <= b.transferred() + 1e-12);
  }
}

TEST_CASE("log-space bounds") {
  const auto b = thm_graphs_bound(100, 10, 5, 0.0, 20);
  REQUIRE(b.floored.has_value());
  CHECK(*b.floored == 33);
  CHECK(b.log_value == doctest::Approx(std::log(binom_exact(33, 20).convert_to<double>())));
  CHECK(thm_graphs_bound(10, 10, 1, 0.0, 5).log_value == -std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(thm_graphs_bound(10, 0, 1, 0.0, 5), DomainError);

  CHECK_FALSE(alon_rodl_bound(100, 10, 5, 10).applicable);
  const auto ar = alon_rodl_bound(100, 50, 60, 40);
  CHECK(ar.applicable);
  CHECK(ar.argument == doctest::Approx(240.0));
  const double ln = std::log(100.0), ex = 2 * 2 * ln;
  CHECK(ar.log_value == doctest::Approx(ex * std::log(std::exp(1.0) * 40 * 2500 / (4 * 60 * 100 * ln)) +
                                        binom_log(240, 40)));
  CHECK(alon_rodl_bound(100, 50, 5, 40).log_value == -std::numeric_limits<double>::infinity());
}

TEST_CASE("sum-free count predictions") {
  const auto z6 = sf_count_prediction(parse_group("Z6"), 3);
  CHECK(z6.q == 2);
  CHECK(z6.leading == 1);
  CHECK(z6.member_size == 3);
  CHECK(z6.lambda_law_matches);
  const auto z5 = sf_count_prediction(parse_group("Z5"), 2);
  CHECK(z5.q == 5);
  CHECK(z5.family_size == 2);
  CHECK(z5.leading == 2);
  CHECK(z5.lambda_q == 0.5);
  CHECK(z5.lower_bonf <= count_sum_free(parse_group("Z5"), 2));

  for (const char* name : {"Z10", "Z12", "Z2xZ8", "Z15", "Z2xZ2xZ4"}) {
    const auto g = parse_group(name);
    const auto exact = sum_free_counts(g);
    for (std::size_t m = 1; m < g.order() / 2; ++m) {
      const auto p = sf_count_prediction(g, m);
      CHECK(p.lower_bonf <= exact[m]);
      CHECK(p.lower_bonf <= p.leading);
      CHECK(p.upper_bonf == p.leading);
      CHECK(p.lambda_law_matches);
    }
  }

  CountRow row;
  row.n = 6;
  row.m = 3;
  row.exact = ExactCount(1);
  row.prediction = z6;
  REQUIRE(row.ratio().has_value());
  CHECK(*row.ratio() == 1.0);
  CountRow missing = row;
  missing.exact.reset();
  CHECK_FALSE(missing.ratio().has_value());
  std::ostringstream os;
  write_count_csv(os, {row, missing});
  CHECK(os.str().rfind("n,m,exact,leading,lower_bonf,upper_bonf,ratio\n", 0) == 0);
}
