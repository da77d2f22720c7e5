#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "factorsmith/engine.hpp"
#include "factorsmith/numonoid.hpp"
#include "oracles.hpp"

using namespace factorsmith;

namespace {

Factorization fz(std::vector<Factorization::Term> terms) { return Factorization(std::move(terms)); }

}  // namespace

TEST_CASE("factorization normalizes terms") {
  const auto z = fz({{2, 1}, {0, 2}, {2, 3}, {1, 0}});
  CHECK(z.length() == 6);
  CHECK(z.terms().size() == 2);
  CHECK(z.multiplicity(2) == 4);
  CHECK(z.min_atom() == 0);
  CHECK(z.to_string() == "u0^2*u2^4");
  CHECK(z.times(1) == fz({{0, 2}, {1, 1}, {2, 4}}));
  CHECK(z.times(5).length() == 7);
}

TEST_CASE("length set helpers") {
  CHECK(delta_of(make_length_set({2, 4, 5})) == std::vector<Length>{1, 2});
  CHECK(delta_of(make_length_set({3})).empty());
  CHECK(rho_of(make_length_set({2, 4})) == Rational::make(2, 1));
  CHECK(rho_of(make_length_set({0})) == Rational::make(1, 1));
  CHECK(rho_of(make_length_set({4, 5, 6})) == Rational::make(3, 2));
  CHECK(sumset(make_length_set({1, 2}), make_length_set({2, 5})) == make_length_set({3, 4, 6, 7}));
  CHECK(Rational::make(3, 2) < Rational::make(2, 1));
}

TEST_CASE("distance on hand examples") {
  const auto two6 = fz({{0, 6}});
  const auto mixed = fz({{0, 3}, {1, 2}});
  const auto three4 = fz({{1, 4}});
  CHECK(distance(two6, two6) == 0);
  CHECK(distance(two6, three4) == 6);
  CHECK(distance(mixed, three4) == 3);
  CHECK(distance(two6, mixed) == 3);
}

TEST_CASE("distance properties on random pairs") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint32_t> mult(0, 4);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Factorization::Term> a;
    std::vector<Factorization::Term> b;
    for (AtomIndex i = 0; i < 5; ++i) {
      a.emplace_back(i, mult(rng));
      b.emplace_back(i, mult(rng));
    }
    const Factorization z(a);
    const Factorization w(b);
    const Length d = distance(z, w);
    CHECK(d == distance(w, z));
    CHECK((d == 0) == (z == w));
    const Length diff = z.length() > w.length() ? z.length() - w.length() : w.length() - z.length();
    CHECK(diff <= d);
    CHECK(d <= std::max(z.length(), w.length()));
  }
}

TEST_CASE("numerical <2,3> factorizations") {
  numonoid::Backend backend(numonoid::parse("2,3"));
  Engine engine(backend);
  const auto& z12 = engine.factorizations(12);
  CHECK(z12 == std::vector<Factorization>{fz({{0, 3}, {1, 2}}), fz({{0, 6}}), fz({{1, 4}})});
  CHECK(engine.length_set(12) == make_length_set({4, 5, 6}));
  CHECK(engine.length_set(6) == make_length_set({2, 3}));
  CHECK(engine.length_set(0) == make_length_set({0}));
  CHECK(engine.factorizations(3) == std::vector<Factorization>{Factorization::atom(1)});
  CHECK(engine.catenary_degree(12) == 3);
  CHECK(engine.catenary_degree(6) == 3);
  CHECK(engine.catenary_degree(4) == 0);
  CHECK(engine.monotone_catenary_degree(12) == 3);
}

TEST_CASE("engine matches knapsack enumeration") {
  for (const auto& gens : std::vector<std::vector<std::int64_t>>{{3, 5, 7}, {4, 6, 9}, {5, 7, 11, 13}}) {
    numonoid::Backend backend(numonoid::NumericalMonoid::make(gens));
    Engine engine(backend);
    for (std::int64_t n = 1; n <= 80; ++n) {
      const auto expected = oracle::numerical_factorizations(gens, n);
      if (expected.empty()) continue;
      const auto& got = engine.factorizations(n);
      CHECK(got == expected);
      CHECK(catenary_degree(got) == oracle::threshold_catenary(got));
      CHECK(monotone_catenary_degree(got) == oracle::threshold_monotone_catenary(got));
    }
  }
}

TEST_CASE("sweeps on small numerical monoids") {
  numonoid::Backend h23(numonoid::parse("2,3"));
  auto report = sweep_invariants(h23, 60);
  CHECK(report.delta_set == std::vector<Length>{1});
  CHECK(report.catenary == 3);
  CHECK(report.lower_bound_only);
  CHECK_FALSE(report.half_factorial);

  numonoid::Backend free(numonoid::parse("1"));
  report = sweep_invariants(free, 30);
  CHECK(report.delta_set.empty());
  CHECK(report.catenary == 0);
  CHECK(report.half_factorial);

  numonoid::Backend h345(numonoid::parse("3,4,5"));
  CHECK(sweep_invariants(h345, 60).catenary == 3);
}

TEST_CASE("daleth") {
  numonoid::Backend h25(numonoid::parse("2,5"));
  Engine engine(h25);
  CHECK(engine.length_set(10) == make_length_set({2, 5}));
  CHECK(daleth(engine, 100) == 5);
  numonoid::Backend free(numonoid::parse("1"));
  CHECK(daleth(free, 10) == 0);
}

TEST_CASE("report determinism") {
  numonoid::Backend backend(numonoid::parse("4,6,9"));
  CHECK(sweep_invariants(backend, 80) == sweep_invariants(backend, 80));
}
