#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <set>

#include "oracles.hpp"
#include "test_support.hpp"
#include "sumfree/errors.hpp"
#include "sumfree/group.hpp"

using namespace sumfree;

namespace {

std::vector<GroupSpec> small_groups(std::size_t max_order) {
  return test_support::factor_lists(max_order);
}

}  // namespace

TEST_CASE("parse_group reads factor lists") {
  auto g = parse_group("Z6");
  CHECK(g.factors() == std::vector<std::uint32_t>{6});
  CHECK(g.order() == 6);
  auto h = parse_group("Z4xZ2");
  CHECK(h.factors() == std::vector<std::uint32_t>{4, 2});
  CHECK(h.order() == 8);
  CHECK(parse_group("z4XZ2") == h);
  CHECK(h.to_string() == "Z4xZ2");
  CHECK_THROWS_AS(parse_group("Z1"), DomainError);
  CHECK_THROWS_AS(parse_group("Z"), ParseError);
  CHECK_THROWS_AS(parse_group("Z4x"), ParseError);
  CHECK_THROWS_AS(parse_group("Y4"), ParseError);
  CHECK_THROWS_AS(parse_group(""), ParseError);
}

TEST_CASE("mixed-radix indexing matches the residue encoding") {
  for (const auto& g : small_groups(36)) {
    for (Element x = 0; x < g.order(); ++x) {
      const auto r = g.residues(x);
      CHECK(oracle::decode(g.factors(), x) == r);
    }
  }
  auto g = parse_group("Z4xZ2");
  CHECK(g.format_element(3) == "(1,1)");
}

TEST_CASE("addition is componentwise modular") {
  for (const auto& g : small_groups(30)) {
    const auto table = oracle::add_table(g.factors());
    for (Element x = 0; x < g.order(); ++x) {
      CHECK(g.add(x, g.zero()) == x);
      CHECK(g.add(x, g.neg(x)) == 0);
      for (Element y = 0; y < g.order(); ++y) REQUIRE(g.add(x, y) == table[x][y]);
    }
  }
  // large groups take the no-table path
  GroupSpec big({40, 30});
  const auto f = big.factors();
  for (Element x = 0; x < big.order(); x += 37)
    for (Element y = 0; y < big.order(); y += 53) {
      auto a = oracle::decode(f, x), b = oracle::decode(f, y);
      for (std::size_t i = 0; i < f.size(); ++i) a[i] = (a[i] + b[i]) % f[i];
      CHECK(big.add(x, y) == oracle::encode(f, a));
    }
}

TEST_CASE("element_order and count_elements_of_order") {
  auto z6 = parse_group("Z6");
  CHECK(element_order(z6, 3) == 2);
  CHECK(element_order(z6, 0) == 1);
  auto z42 = parse_group("Z4xZ2");
  CHECK(element_order(z42, 3) == 4);  // (1,1)
  CHECK(count_elements_of_order(parse_group("Z5"), 5) == 4);
  CHECK(count_elements_of_order(z6, 2) == 1);
  CHECK(count_elements_of_order(parse_group("Z2xZ2"), 2) == 3);

  for (const auto& g : small_groups(64)) {
    for (Element x = 0; x < g.order(); ++x) {
      // iterate addition until zero
      std::uint64_t k = 1;
      Element y = x;
      while (y != 0) {
        y = g.add(y, x);
        ++k;
      }
      REQUIRE(element_order(g, x) == k);
      CHECK(g.order() % k == 0);
    }
  }
}

TEST_CASE("smallest_typeI_prime") {
  CHECK(smallest_typeI_prime(parse_group("Z10")) == 2u);
  CHECK(smallest_typeI_prime(parse_group("Z35")) == 5u);
  CHECK_FALSE(smallest_typeI_prime(parse_group("Z9")).has_value());
  CHECK_FALSE(smallest_typeI_prime(parse_group("Z7")).has_value());
  CHECK(smallest_typeI_prime(parse_group("Z3xZ11")) == 11u);
}

TEST_CASE("surjective homomorphisms to Z_q") {
  CHECK(surjective_homs_to_Zq(parse_group("Z5"), 5).size() == 4);
  CHECK(surjective_homs_to_Zq(parse_group("Z6"), 2).size() == 1);
  CHECK(surjective_homs_to_Zq(parse_group("Z5"), 2).empty());
  CHECK_THROWS_AS(surjective_homs_to_Zq(parse_group("Z6"), 4), DomainError);

  // brute force: every coefficient tuple that is a well-defined surjection
  for (const auto& g : small_groups(64)) {
    for (std::uint32_t q : {2u, 3u, 5u, 7u}) {
      const auto homs = surjective_homs_to_Zq(g, q);
      std::size_t c = 0;
      for (auto f : g.factors()) c += f % q == 0;
      std::size_t expected = 1;
      for (std::size_t i = 0; i < c; ++i) expected *= q;
      REQUIRE(homs.size() == expected - 1);
      for (const auto& phi : homs) {
        std::vector<bool> hit(q, false);
        for (Element x = 0; x < g.order(); ++x) {
          hit[phi.apply(g, x)] = true;
          for (Element y = 0; y < g.order(); y += 3)
            REQUIRE(phi.apply(g, g.add(x, y)) == (phi.apply(g, x) + phi.apply(g, y)) % q);
        }
        CHECK(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }));
      }
    }
  }
}

TEST_CASE("characters") {
  auto z4 = parse_group("Z4");
  auto v = character_value(z4, 1, 1);
  CHECK(std::abs(v - std::complex<double>(0, 1)) < 1e-12);
  auto z6 = parse_group("Z6");
  CHECK(std::abs(character_value(z6, 3, 1) - std::complex<double>(-1, 0)) < 1e-12);
  for (Element x = 0; x < 6; ++x) CHECK(character_value(z6, 0, x) == std::complex<double>(1, 0));

  for (const auto& g : small_groups(64)) {
    const std::size_t n = g.order();
    std::vector<std::vector<std::complex<double>>> table(n, std::vector<std::complex<double>>(n));
    for (Element a = 0; a < n; ++a)
      for (Element x = 0; x < n; ++x) table[a][x] = character_value(g, a, x);
    for (Element a = 0; a < n; ++a) {
      // multiplicativity
      for (Element x = 0; x < n; x += 5)
        for (Element y = 0; y < n; y += 7)
          REQUIRE(std::abs(table[a][g.add(x, y)] - table[a][x] * table[a][y]) < 1e-12);
      // orthogonality
      for (Element b = a; b < n; ++b) {
        std::complex<double> ip = 0;
        for (Element x = 0; x < n; ++x) ip += table[a][x] * std::conj(table[b][x]);
        const double expected = a == b ? static_cast<double>(n) : 0.0;
        REQUIRE(std::abs(ip - expected) < 1e-9);
      }
      // range size
      std::set<std::uint64_t> range;
      for (Element x = 0; x < n; ++x) range.insert(character_phase(g, a, x));
      CHECK(character_range_size(g, a) == range.size());
    }
  }
}

TEST_CASE("index-two subgroups") {
  auto z6 = index_two_subgroups(parse_group("Z6"));
  REQUIRE(z6.size() == 1);
  CHECK(z6[0].to_vector() == std::vector<std::size_t>{0, 2, 4});
  CHECK(index_two_subgroups(parse_group("Z5")).empty());
  auto k4 = index_two_subgroups(parse_group("Z2xZ2"));
  CHECK(k4.size() == 3);
  for (const auto& g : small_groups(64)) {
    const auto subs = index_two_subgroups(g);
    // number of index-2 subgroups = number of elements of order 2
    CHECK(subs.size() == count_elements_of_order(g, 2));
    for (const auto& h : subs) {
      REQUIRE(h.count() * 2 == g.order());
      h.for_each([&](std::size_t x) {
        h.for_each([&](std::size_t y) {
          REQUIRE(h.contains(g.add(static_cast<Element>(x), static_cast<Element>(y))));
        });
      });
    }
  }
}

TEST_CASE("parse_element_set") {
  auto g = parse_group("Z10");
  CHECK(parse_element_set(g, "1,3,5").to_vector() == std::vector<std::size_t>{1, 3, 5});
  CHECK(parse_element_set(g, "").empty());
  CHECK_THROWS_AS(parse_element_set(g, "1,x"), ParseError);
  CHECK_THROWS_AS(parse_element_set(g, "10"), DomainError);
}
