#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "factorsmith/engine.hpp"
#include "factorsmith/quadorder.hpp"
#include "oracles.hpp"

using namespace factorsmith;
using namespace factorsmith::quadorder;

namespace {

// Independent enumeration: every (a, b, c) with c | a, c | b, 0 <= b < a,
// a*c = n whose module is closed under tau.
std::vector<IdealHNF> brute_ideals_of_norm(const QuadOrder& o, Int n) {
  std::vector<IdealHNF> out;
  for (Int c = 1; c <= n; ++c) {
    if (n % c) continue;
    const Int a = n / c;
    if (a % c) continue;
    for (Int b = 0; b < a; b += c) {
      const IdealHNF h{a, b, c};
      // tau*a = (0, a); tau*(b + c tau) = (c r, b + c s)
      const bool closed = contains(h, {0, a}) && contains(h, {c * o.r(), b + c * o.s()});
      if (closed) out.push_back(h);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

const std::vector<std::pair<Int, Int>> kOrders{{-1, 1}, {-1, 2}, {-1, 3}, {-1, 5}, {-3, 2}, {-7, 2}, {5, 2}, {13, 3}, {2, 3}};

}  // namespace

TEST_CASE("field and order basics") {
  CHECK_THROWS_AS(QuadraticField::make(8), std::invalid_argument);
  CHECK_THROWS_AS(QuadraticField::make(1), std::invalid_argument);
  CHECK(QuadraticField::make(-3).half_omega());
  CHECK_FALSE(QuadraticField::make(-1).half_omega());
  CHECK(QuadraticField::make(-1).discriminant() == -4);
  CHECK(QuadraticField::make(5).discriminant() == 5);
  const auto o = QuadOrder::make(-3, 2);  // Z[sqrt(-3)], tau = 1 + sqrt(-3)
  CHECK(o.s() == 2);
  CHECK(o.r() == -4);
  CHECK(o.discriminant() == -12);
  CHECK(o.norm({0, 1}) == 4);
}

TEST_CASE("ideals from generators") {
  const auto zi = QuadOrder::make(-1, 1);
  CHECK(ideal_from_generators(zi, {{1, 0}}) == unit_ideal());
  CHECK(ideal_from_generators(zi, {{2, 0}, {1, 1}}) == IdealHNF{2, 1, 1});
  CHECK(ideal_from_generators(zi, {{7, 0}}) == IdealHNF{7, 0, 7});
  CHECK(ideal_from_generators(zi, {{7, 0}}).norm() == 49);
  CHECK_THROWS_AS(ideal_from_generators(zi, {{0, 0}}), std::invalid_argument);
  CHECK(mul(zi, {2, 1, 1}, ideal_from_generators(zi, {{2, 0}, {1, -1}})) == IdealHNF{2, 0, 2});
}

TEST_CASE("HNF canonicity and principal norms") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<Int> coef(-12, 12);
  for (const auto& [d, f] : kOrders) {
    const auto o = QuadOrder::make(d, f);
    for (int trial = 0; trial < 60; ++trial) {
      Element x{coef(rng), coef(rng)};
      Element y{coef(rng), coef(rng)};
      if (x == Element{} || y == Element{}) continue;
      const auto h = ideal_from_generators(o, {x, y});
      CHECK(ideal_from_generators(o, {y, x}) == h);
      CHECK(ideal_from_generators(o, {{-x.x, -x.y}, y}) == h);
      CHECK(ideal_from_generators(o, {{h.a, 0}, {h.b, h.c}}) == h);
      CHECK(principal(o, x).norm() == std::abs(o.norm(x)));
      CHECK(contains(h, o.multiply(x, {3, -2})));
    }
  }
  // scaling by the unit i of Z[i]
  const auto zi = QuadOrder::make(-1, 1);
  CHECK(ideal_from_generators(zi, {{3, 1}, {5, 0}}) == ideal_from_generators(zi, {zi.multiply({3, 1}, {0, 1}), {5, 0}}));
}

TEST_CASE("ideal enumeration agrees with brute force") {
  for (const auto& [d, f] : kOrders) {
    const auto o = QuadOrder::make(d, f);
    for (Int n = 1; n <= 120; ++n) CHECK(ideals_of_norm(o, n) == brute_ideals_of_norm(o, n));
  }
  const auto zi = QuadOrder::make(-1, 1);
  CHECK(ideals_of_norm(zi, 1) == std::vector<IdealHNF>{unit_ideal()});
  CHECK(ideals_of_norm(zi, 5).size() == 2);
  CHECK(ideals_of_norm(zi, 13).size() == 2);
  CHECK(ideals_of_norm(QuadOrder::make(-1, 3), 3).size() == 1);
}

TEST_CASE("colon ideals, invertibility and multipliers") {
  const auto o = QuadOrder::make(-3, 2);
  const IdealHNF two_tau = ideal_from_generators(o, {{2, 0}, {0, 1}});
  CHECK(colon(o, unit_ideal(), unit_ideal()) == FracIdeal{1, unit_ideal()});
  CHECK_FALSE(is_invertible(o, two_tau));
  CHECK(ring_of_multipliers(o, two_tau) == QuadOrder::make(-3, 1));
  CHECK(is_stable(o, two_tau));
  CHECK(is_invertible(o, principal(o, {3, 1})));

  for (const auto& [d, f] : kOrders) {
    const auto ord = QuadOrder::make(d, f);
    const auto ideals = enumerate_ideals(ord, 150);
    for (const auto& i : ideals) {
      const auto mult = colon(ord, i, i);
      // (I:I) contains O, and (I:I) I is inside I
      CHECK(is_subset(IdealHNF{mult.den, 0, mult.den}, mult.num));
      CHECK(is_subset(mul(ord, mult.num, i), IdealHNF{mult.den * i.a, mult.den * i.b, mult.den * i.c}));
      if (f == 1) CHECK(is_invertible(ord, i));
      CHECK(is_stable(ord, i));
      for (const auto& j : ideals) {
        if (i.norm() * j.norm() > 150) break;
        const auto q = colon(ord, i, j);
        // q J lies in I: num * J inside den * I
        CHECK(is_subset(mul(ord, q.num, j), IdealHNF{q.den * i.a, q.den * i.b, q.den * i.c}));
        if (is_invertible(ord, i) && is_invertible(ord, j)) {
          CHECK(mul(ord, i, j).norm() == i.norm() * j.norm());
          CHECK(is_invertible(ord, mul(ord, i, j)));
        }
      }
    }
  }
}

TEST_CASE("colon is the largest multiplier module") {
  // Any z = (x + y tau)/den with z J in I must already lie in (I:J).
  const auto o = QuadOrder::make(-1, 3);
  const auto ideals = enumerate_ideals(o, 40);
  for (const auto& i : ideals)
    for (const auto& j : ideals) {
      const auto q = colon(o, i, j);
      for (Int den : {1, 2, 3, 6, 9}) {
        for (Int x = -9; x <= 9; ++x)
          for (Int y = -3; y <= 3; ++y) {
            if (x == 0 && y == 0) continue;
            // z J in I  <=>  (x + y tau) J in den I
            const auto zj = mul(o, principal(o, {x, y}), j);
            const bool inside = is_subset(zj, IdealHNF{den * i.a, den * i.b, den * i.c});
            // z in (1/q.den) q.num  <=>  q.den (x + y tau) in den q.num
            const bool member = contains(IdealHNF{den * q.num.a, den * q.num.b, den * q.num.c}, {q.den * x, q.den * y});
            CHECK(inside == member);
          }
      }
    }
}

TEST_CASE("splitting and conductor data") {
  const auto qi = QuadraticField::make(-1);
  CHECK(splitting_type(qi, 5) == Splitting::split);
  CHECK(splitting_type(qi, 3) == Splitting::inert);
  CHECK(splitting_type(qi, 2) == Splitting::ramified);
  CHECK(splitting_type(QuadraticField::make(-3), 2) == Splitting::inert);
  CHECK(splitting_type(QuadraticField::make(-7), 2) == Splitting::split);
  CHECK_THROWS_AS(splitting_type(qi, 9), std::invalid_argument);
  // cross-check with the number of norm-p ideals of the maximal order
  for (Int d : {-1, -2, -3, -5, -7, 2, 3, 5, 13}) {
    const auto o = QuadOrder::make(d, 1);
    for (Int p : {2, 3, 5, 7, 11, 13, 17, 19, 23}) {
      const auto n = ideals_of_norm(o, p).size();
      const auto t = splitting_type(o.field(), p);
      CHECK(n == (t == Splitting::split ? 2u : t == Splitting::ramified ? 1u : 0u));
    }
  }
  CHECK(pi_bijective(QuadOrder::make(-1, 3)));
  CHECK_FALSE(pi_bijective(QuadOrder::make(-1, 5)));
  CHECK(conductor_exponent(QuadOrder::make(-1, 2), 2) == 2);
  CHECK(conductor_exponent(QuadOrder::make(-1, 9), 3) == 2);
  CHECK(conductor_exponent(QuadOrder::make(-1, 25), 5) == 2);
  CHECK_THROWS_AS(conductor_exponent(QuadOrder::make(-1, 1), 2), std::invalid_argument);
  CHECK(maximal_ideals_over(QuadOrder::make(-1, 3), 3) == std::vector<IdealHNF>{{3, 0, 1}});
  CHECK(maximal_ideals_over(QuadOrder::make(-1, 1), 3) == std::vector<IdealHNF>{{3, 0, 3}});
  CHECK(maximal_ideals_over(QuadOrder::make(-1, 1), 5).size() == 2);
}

TEST_CASE("ideal monoid backends") {
  const auto o3 = QuadOrder::make(-1, 3);
  auto inv = invertible_backend(o3);
  SweepOptions opts;
  opts.monotone = false;
  auto report = sweep_invariants(inv, 400, opts);
  CHECK(report.half_factorial);
  CHECK(report.elasticity == Rational::make(1, 1));

  // inert prime away from the conductor: the local component is factorial
  auto inert = local_component_backend(QuadOrder::make(-1, 1), {3, 0, 3}, false);
  report = sweep_invariants(inert, 3000, opts);
  CHECK(report.atoms == 1);
  CHECK(report.delta_set.empty());
  CHECK(report.catenary == 0);

  // split conductor prime: lengths spread out
  const auto o7 = QuadOrder::make(-7, 2);
  const auto m = maximal_ideals_over(o7, 2);
  REQUIRE(m.size() == 1);
  auto local = local_component_backend(o7, m[0], true);
  report = sweep_invariants(local, 1 << 12, opts);
  CHECK_FALSE(report.half_factorial);
  CHECK(report.elasticity >= Rational::make(3, 2));
}

TEST_CASE("atoms are exactly the ideals without proper factorization") {
  const auto o = QuadOrder::make(-1, 3);
  auto all = all_ideals_backend(o);
  const auto ideals = enumerate_ideals(o, 200);
  std::set<IdealHNF> products;
  for (const auto& x : ideals)
    for (const auto& y : ideals)
      if (x != unit_ideal() && y != unit_ideal() && x.norm() * y.norm() <= 200 * 9) products.insert(mul(o, x, y));
  for (const auto& x : ideals) {
    if (x == unit_ideal()) continue;
    CHECK(all.is_atom(x) == (products.count(x) == 0));
  }
}

TEST_CASE("length sets split over primary parts") {
  for (const auto& [d, f] : std::vector<std::pair<Int, Int>>{{-1, 3}, {-1, 5}, {-3, 2}, {5, 2}}) {
    const auto o = QuadOrder::make(d, f);
    auto all = all_ideals_backend(o);
    Engine engine(all);
    for (const auto& x : enumerate_ideals(o, 600)) {
      const auto primes = factorize(x.norm());
      if (primes.size() < 2) continue;
      LengthSet expected = make_length_set({0});
      for (const auto& [p, k] : primes) expected = sumset(expected, engine.length_set(primary_part(o, x, p)));
      CHECK(engine.length_set(x) == expected);
    }
  }
}

TEST_CASE("catenary matches threshold oracle on ideal monoids") {
  const auto o = QuadOrder::make(-1, 5);
  auto all = all_ideals_backend(o);
  Engine engine(all);
  for (const auto& x : all.element_sweep(700)) {
    const auto& z = engine.factorizations(x);
    if (z.size() > 50) continue;
    CHECK(catenary_degree(z) == oracle::threshold_catenary(z));
    CHECK(monotone_catenary_degree(z) == oracle::threshold_monotone_catenary(z));
  }
}
