#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "factorsmith/engine.hpp"
#include "factorsmith/numonoid.hpp"
#include "oracles.hpp"

using namespace factorsmith;
using numonoid::NumericalMonoid;

TEST_CASE("make normalizes and validates") {
  const auto m = NumericalMonoid::make({3, 2});
  CHECK(std::vector<std::int64_t>(m.generators().begin(), m.generators().end()) == std::vector<std::int64_t>{2, 3});
  CHECK(m.frobenius() == 1);
  CHECK(NumericalMonoid::make({1}).frobenius() == -1);
  CHECK_THROWS_AS(NumericalMonoid::make({4, 6, 2}), std::invalid_argument);
  CHECK_THROWS_AS(NumericalMonoid::make({}), std::invalid_argument);
  CHECK_THROWS_AS(NumericalMonoid::make({0, 1}), std::invalid_argument);
  const auto m2 = NumericalMonoid::make({4, 6, 9, 10});
  CHECK(m2.to_string() == "<4,6,9>");
  CHECK(numonoid::parse(" 3, 5 ,7") == NumericalMonoid::make({3, 5, 7}));
}

TEST_CASE("membership") {
  const auto m = numonoid::parse("2,3");
  CHECK_FALSE(m.contains(1));
  CHECK(m.contains(7));
  CHECK(m.contains(0));
  CHECK_FALSE(m.contains(-2));
}

TEST_CASE("membership agrees with coin representability") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> gen(2, 30);
  int built = 0;
  while (built < 100) {
    std::vector<std::int64_t> gens{gen(rng), gen(rng), gen(rng)};
    std::int64_t g = 0;
    for (auto x : gens) g = std::gcd(g, x);
    if (g != 1) continue;
    ++built;
    const auto m = NumericalMonoid::make(gens);
    const std::int64_t top = std::max<std::int64_t>(10 * m.frobenius(), 10);
    for (std::int64_t n = 0; n <= top; ++n) REQUIRE(m.contains(n) == oracle::representable(gens, n));
    CHECK(!m.contains(m.frobenius()));
  }
}

TEST_CASE("min delta formula") {
  CHECK(numonoid::min_delta_gcd(numonoid::parse("2,3")) == 1);
  CHECK(numonoid::min_delta_gcd(numonoid::parse("3,5,7")) == 2);
  CHECK(numonoid::min_delta_gcd(numonoid::parse("5,6,7,8,9")) == 1);
  CHECK_THROWS_AS(numonoid::min_delta_gcd(numonoid::parse("1")), std::invalid_argument);

  const auto m = numonoid::parse("3,5,7");
  numonoid::Backend backend(m);
  SweepOptions options;
  options.catenary = false;
  options.daleth = false;
  const auto report = sweep_invariants(backend, numonoid::completeness_bound(m), options);
  REQUIRE_FALSE(report.delta_set.empty());
  CHECK(report.delta_set.front() == 2);
}

TEST_CASE("backend atoms") {
  numonoid::Backend b(numonoid::parse("4,6,9,10"));
  CHECK(b.atoms_within(100).size() == 3);
  CHECK(b.atom(2) == 9);
  numonoid::Backend free(numonoid::parse("1"));
  CHECK(free.atoms_within(5).size() == 1);
  CHECK(free.atom(0) == 1);
  CHECK(b.quotients(13, 0) == std::vector<std::int64_t>{9});
  CHECK(b.quotients(11, 0).empty());
}
