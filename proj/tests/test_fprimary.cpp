#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <deque>
#include <random>
#include <set>

#include "factorsmith/engine.hpp"
#include "factorsmith/fprimary.hpp"

using namespace factorsmith;
using namespace factorsmith::fprimary;
using Poly = ProfileRing::Poly;

namespace {

// Schoolbook product of digit vectors reduced by the monic modulus.
Elem oracle_mul(const FiniteField& f, Elem a, Elem b) {
  const std::uint32_t p = f.characteristic();
  const std::uint32_t e = f.degree();
  const auto da = f.digits(a);
  const auto db = f.digits(b);
  std::vector<std::uint32_t> prod(2 * e, 0);
  for (std::uint32_t i = 0; i < e; ++i)
    for (std::uint32_t j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
  const auto& m = f.modulus();
  for (std::size_t i = prod.size(); i-- > e;) {
    const std::uint32_t c = prod[i];
    for (std::uint32_t j = 0; j <= e; ++j) prod[i - e + j] = (prod[i - e + j] + (p - c) * m[j]) % p;
  }
  std::vector<std::uint8_t> out(e);
  for (std::uint32_t i = 0; i < e; ++i) out[i] = static_cast<std::uint8_t>(prod[i]);
  return f.from_digits(out);
}

// Every F_p-subspace of the quotient ring that is closed under the ring
// basis: built by adjoining single vectors, with no ideal structure used.
std::set<FpSpan> oracle_ideals(const TruncatedRing& q) {
  std::vector<FpSpan::Vec> vecs;
  for (const auto& x : q.elements()) vecs.push_back(q.vec(x));
  std::set<FpSpan> spaces{q.zero()};
  std::deque<FpSpan> queue{q.zero()};
  while (!queue.empty()) {
    const FpSpan cur = queue.front();
    queue.pop_front();
    for (const auto& v : vecs) {
      if (cur.contains(v)) continue;
      FpSpan next = cur;
      next.insert(v);
      if (spaces.insert(next).second) queue.push_back(next);
    }
  }
  std::set<FpSpan> out;
  for (const auto& s : spaces) {
    bool closed = true;
    for (const auto& row : s.rows())
      for (const auto& r : q.basis())
        if (closed && !s.contains(q.vec(q.ring().mul(r, q.poly(row), q.truncation())))) closed = false;
    if (closed) out.insert(s);
  }
  return out;
}

FieldTower gf16_over_gf2() { return FieldTower(FiniteField::parse(2, "y4=y+1"), 1); }

ProfileRing cohen_kaplansky_ring() { return ProfileRing::parse(gf16_over_gf2(), "K,V(1,y,y^2),L"); }

}  // namespace

TEST_CASE("finite field arithmetic matches schoolbook multiplication") {
  for (const auto& f : {FiniteField::parse(2, "y4=y+1"), FiniteField::standard(3, 2), FiniteField::standard(2, 3),
                        FiniteField::standard(5, 1)}) {
    for (Elem a = 0; a < f.size(); ++a) {
      for (Elem b = 0; b < f.size(); ++b) CHECK(f.mul(a, b) == oracle_mul(f, a, b));
      if (a) CHECK(f.mul(a, f.inv(a)) == 1);
      CHECK(f.add(a, f.neg(a)) == 0);
      CHECK(f.parse_element(f.name(a)) == a);
    }
  }
  const auto f = FiniteField::parse(2, "y4=y+1");
  CHECK(f.size() == 16);
  CHECK(f.name(f.pow(f.generator_y(), 4)) == "1+y");
  CHECK(f.subfield(2).size() == 4);
  CHECK(f.subfield(1) == std::vector<Elem>{0, 1});
  CHECK_THROWS_AS(FiniteField::parse(2, "y2=1"), std::invalid_argument);
  CHECK_THROWS_AS(FiniteField::parse(2, "y4=y^2+1"), std::invalid_argument);
  CHECK_THROWS_AS(FiniteField::make(4, {1, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(f.subfield(3), std::invalid_argument);
}

TEST_CASE("row spaces are canonical") {
  FpSpan a(3, 3);
  FpSpan b(3, 3);
  CHECK(a.insert({1, 2, 0}));
  CHECK(a.insert({0, 1, 1}));
  CHECK_FALSE(a.insert({1, 0, 1}));
  CHECK(b.insert({0, 2, 2}));
  CHECK(b.insert({2, 1, 0}));
  CHECK(a == b);
  CHECK(a.rank() == 2);
  CHECK(a.elements().size() == 9);
  CHECK(a.contains(FpSpan::Vec{1, 1, 2}));
  CHECK_FALSE(a.contains(FpSpan::Vec{0, 0, 1}));
}

TEST_CASE("profile rings reject non-closed coefficient profiles") {
  FieldTower t(FiniteField::standard(2, 2), 1);
  CHECK_NOTHROW(ProfileRing::parse(t, "K,0,L"));
  try {
    ProfileRing::parse(t, "K,V(y),V(y),L");
    FAIL("expected a closure error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("S_1 * S_1") != std::string::npos);
  }
  CHECK_THROWS_AS(ProfileRing::parse(t, "V(y),L"), std::invalid_argument);
  CHECK_THROWS_AS(ProfileRing::parse(t, "K,V(y)"), std::invalid_argument);

  const auto r = cohen_kaplansky_ring();
  CHECK(r.conductor() == 2);
  CHECK(r.residue_units().size() == 8);
  CHECK(r.unit_representatives().size() == 30);
  const auto g = ProfileRing::gap(t, 3);
  CHECK(g.conductor() == 3);
  CHECK_FALSE(g.has_valuation(1));
  CHECK(g.has_valuation(3));
}

TEST_CASE("finite quotient of the Cohen-Kaplansky ring") {
  const TruncatedRing q(cohen_kaplansky_ring(), 3);
  CHECK(q.size() == 256);
  CHECK(q.ring_dim() == 8);
  CHECK(q.elements().size() == 256);
  CHECK(q.enumerate_ideals().size() == 97);
}

TEST_CASE("ideal enumeration agrees with the exhaustive subspace oracle") {
  FieldTower t(FiniteField::standard(2, 2), 1);
  for (const auto& q : {TruncatedRing(cohen_kaplansky_ring(), 2), TruncatedRing(ProfileRing::gap(t, 2), 4),
                        TruncatedRing(ProfileRing::parse(t, "K,L"), 3)}) {
    const auto bfs = q.enumerate_ideals();
    const std::set<FpSpan> got(bfs.begin(), bfs.end());
    CHECK(got.size() == bfs.size());
    CHECK(got == oracle_ideals(q));
  }
}

TEST_CASE("scaled target cases match the hand computation") {
  const auto report = verify_nonhalffactorial_ideal_example();
  const auto L = FiniteField::parse(2, "y4=y+1");
  struct Expected {
    const char* a;
    const char* multiplier;
    std::vector<const char*> w;
  };
  const std::vector<Expected> expected{
      {"1", "1", {"0", "y", "1+y^3", "1+y+y^3"}},
      {"y", "1+y^3", {"0", "1", "1+y^2+y^3", "y^2+y^3"}},
      {"1+y", "y+y^2+y^3", {"0", "1+y+y^2+y^3", "1+y+y^2", "y^3"}},
      {"y^2", "1+y^2+y^3", {"0", "1+y^3", "1+y+y^2+y^3", "y+y^2"}},
      {"1+y^2", "1+y+y^3", {"0", "1+y^2", "y^2+y^3", "1+y^3"}},
      {"y+y^2", "1+y+y^2", {"0", "y+y^2+y^3", "y+y^3", "y^2"}},
      {"1+y+y^2", "y+y^2", {"0", "y^2+y^3", "1+y", "1+y+y^2+y^3"}},
  };
  REQUIRE(report.cases.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const auto& c = report.cases[i];
    CHECK(c.a == L.parse_element(expected[i].a));
    CHECK(c.multiplier == L.parse_element(expected[i].multiplier));
    std::set<Elem> want;
    for (const char* w : expected[i].w) want.insert(L.parse_element(w));
    CHECK(std::set<Elem>(c.w.begin(), c.w.end()) == want);
    CHECK_FALSE(c.inside_v);
  }
  std::set<Elem> target;
  for (const char* w : {"0", "y", "1+y^3", "1+y+y^3"}) target.insert(L.parse_element(w));
  CHECK(std::set<Elem>(report.target.begin(), report.target.end()) == target);
}

TEST_CASE("non-half-factorial ideal monoid over a half-factorial ring") {
  const auto r = verify_nonhalffactorial_ideal_example();
  CHECK(r.ideal_in_m2);
  CHECK(r.m3_in_ideal);
  CHECK(r.nonprincipal);
  CHECK(r.atom.atom);
  CHECK(r.atom.ideals_scanned == 96);
  CHECK(r.atom_by_divisor_search);
  CHECK_FALSE(r.scan.realized);
  CHECK(r.scan.subspaces == 16);
  CHECK(r.scan.pairs == 256);
  CHECK(r.products_cover_l);
  CHECK(r.element_half_factorial);
  CHECK_FALSE(r.ideal_half_factorial);
  CHECK(r.invertible_half_factorial);
  CHECK(r.multiplier_identity);
  CHECK(r.pass);
}

TEST_CASE("divisor search agrees with the quotient atom check") {
  const auto ring = cohen_kaplansky_ring();
  const TruncatedRing q(ring, 3);
  IdealBackend backend(ring, {.max_width = 8, .principal_only = false});
  const HeadIdeal m3 = power(ring, maximal_ideal(ring), 3);
  std::size_t compared = 0;
  for (std::uint32_t v = 1; v <= 2; ++v)
    for (const auto& x : backend.window_of_valuation(v)) {
      if (!is_subset(ring, m3, x)) continue;
      ++compared;
      CHECK(backend.is_atom(x) == ideal_monoid_atom_check(q, q.image(x)).atom);
    }
  CHECK(compared > 10);
}

TEST_CASE("head-ideal arithmetic is stable under truncation") {
  const auto ring = cohen_kaplansky_ring();
  IdealBackend backend(ring, {.max_width = 5, .principal_only = false});
  std::vector<HeadIdeal> pool;
  for (std::uint32_t v = 1; v <= 3; ++v) {
    const auto& level = backend.window_of_valuation(v);
    pool.insert(pool.end(), level.begin(), level.end());
  }
  std::mt19937 rng(7);
  REQUIRE(pool.size() > 20);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int trial = 0; trial < 60; ++trial) {
    const HeadIdeal& a = pool[pick(rng)];
    const HeadIdeal& b = pool[pick(rng)];
    const std::uint32_t n = a.v + b.v + ring.conductor();
    for (std::uint32_t extra : {0u, 2u}) {
      const TruncatedRing q(ring, n + extra);
      CHECK(q.image(mul(ring, a, b)) == q.product(q.image(a), q.image(b)));
      CHECK(q.image(add(ring, a, b)) == q.sum(q.image(a), q.image(b)));
      CHECK(is_subset(ring, a, b) == q.image(b).contains(q.image(a)));
    }
  }
}

TEST_CASE("element monoids") {
  const auto ck = cohen_kaplansky_ring();
  ElementBackend half(ck);
  CHECK(is_half_factorial_rank1(half).half_factorial);
  SweepOptions opts;
  opts.monotone = false;
  const auto report = sweep_invariants(half, 6, opts);
  CHECK(report.half_factorial);
  CHECK(report.delta_set.empty());

  // In K + X^n L[[X]] the lengths of X^v u are {l : n l <= v <= (2n-1) l}.
  FieldTower t(FiniteField::standard(2, 2), 1);
  for (std::uint32_t n : {2u, 3u}) {
    ElementBackend gap(ProfileRing::gap(t, n));
    const auto verdict = is_half_factorial_rank1(gap);
    CHECK_FALSE(verdict.half_factorial);
    CHECK(verdict.witness->v == n);
    Engine<ElementBackend> engine(gap);
    for (const auto& x : gap.element_sweep(5 * n)) {
      std::vector<Length> expect;
      for (Length l = 1; l <= x.v; ++l)
        if (n * l <= x.v && x.v <= (2 * n - 1) * l) expect.push_back(l);
      CHECK(engine.length_set(x).values == expect);
    }
  }
}

TEST_CASE("two-generated field extensions") {
  CHECK(two_generated_dual_check(FieldTower(FiniteField::standard(2, 2), 1)).two_generated);
  CHECK_FALSE(two_generated_dual_check(gf16_over_gf2()).two_generated);
  CHECK(two_generated_dual_check(FieldTower(FiniteField::parse(2, "y4=y+1"), 2)).two_generated);
  CHECK(two_generated_dual_check(FieldTower(FiniteField::standard(3, 2), 1)).two_generated);
}

TEST_CASE("square of the maximal ideal in a principal ideal") {
  FieldTower t(FiniteField::standard(2, 3), 1);
  for (std::uint32_t n : {1u, 2u, 3u}) {
    const auto ring = ProfileRing::gap(t, n);
    const auto c = m_squared_in_principal(ring);
    CHECK(c.contained);
    CHECK(c.witness->v == n);
  }
  CHECK_FALSE(m_squared_in_principal(cohen_kaplansky_ring()).contained);
}

TEST_CASE("gap ring over GF(4) with n = 2") {
  const auto g = verify_gap_ring(FieldTower(FiniteField::standard(2, 2), 1), 2, 2);
  CHECK_FALSE(g.element.half_factorial);
  CHECK(g.containment.contained);
  CHECK(g.ideals.daleth == 3);
  CHECK(g.ideals.delta_set == std::vector<Length>{1});
  CHECK(g.principal.daleth == 3);
  CHECK(g.decomposition_holds);
  CHECK(g.decomposed == g.ideals.elements);
  CHECK(g.pass);
}

TEST_CASE("ideal half-factoriality verdicts") {
  const auto ck = cohen_kaplansky_ring();
  IdealBackend wide(ck, {.max_width = 6, .principal_only = false});
  const auto v = ideal_monoid_half_factorial(wide, 3);
  CHECK(v.element_half_factorial);
  CHECK_FALSE(v.half_factorial);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->v == 2);

  // DVR-like ring K + X L[[X]] with L = K: every ideal is a power of m.
  FieldTower k(FiniteField::standard(2, 2), 2);
  IdealBackend dvr(ProfileRing::parse(k, "L"), {.max_width = 1, .principal_only = false});
  CHECK(ideal_monoid_half_factorial(dvr, 3).half_factorial);
}
