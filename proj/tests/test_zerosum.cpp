#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "factorsmith/engine.hpp"
#include "factorsmith/zerosum.hpp"
#include "oracles.hpp"

using namespace factorsmith;
using zerosum::FiniteAbelianGroup;
using zerosum::Sequence;

namespace {

std::vector<std::uint32_t> codes_of(const Sequence& s) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t g = 0; g < s.size(); ++g)
    for (int k = 0; k < s[g]; ++k) out.push_back(g);
  return out;
}

// Independent minimality test: scan all proper non-empty subsets by bitmask.
bool brute_minimal(const FiniteAbelianGroup& group, const Sequence& s) {
  const auto codes = codes_of(s);
  const std::uint32_t n = static_cast<std::uint32_t>(codes.size());
  std::uint32_t total = 0;
  for (auto g : codes) total = group.add(total, g);
  if (n == 0 || total != 0) return false;
  for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
    std::uint32_t sum = 0;
    for (std::uint32_t i = 0; i < n; ++i)
      if (mask >> i & 1) sum = group.add(sum, codes[i]);
    if (sum == 0) return false;
  }
  return true;
}

std::set<Sequence> brute_atoms(const FiniteAbelianGroup& group) {
  std::set<Sequence> out;
  zerosum::Backend backend(group);
  for (const auto& s : backend.element_sweep(group.order()))
    if (brute_minimal(group, s)) out.insert(s);
  return out;
}

}  // namespace

TEST_CASE("group normalization") {
  CHECK(zerosum::parse("2x2").invariant_factors() == std::vector<std::uint32_t>{2, 2});
  CHECK(zerosum::parse("6,4").invariant_factors() == std::vector<std::uint32_t>{2, 12});
  CHECK(zerosum::parse("3").exponent() == 3);
  CHECK(zerosum::parse("2,4").rank() == 2);
  CHECK(zerosum::parse("2,3").invariant_factors() == std::vector<std::uint32_t>{6});
  CHECK(zerosum::parse("2x4").to_string() == "Z/2+Z/4");
  const auto g = zerosum::parse("2,4");
  for (std::uint32_t a = 0; a < g.order(); ++a) {
    CHECK(g.add(a, g.negate(a)) == 0);
    for (std::uint32_t b = 0; b < g.order(); ++b) CHECK(g.add(a, b) == g.add(b, a));
  }
}

TEST_CASE("atoms of small cyclic groups") {
  const auto z2 = zerosum::parse("2");
  const auto a2 = zerosum::minimal_zero_sums(z2);
  REQUIRE(a2.size() == 1);
  CHECK(a2[0] == Sequence{0, 2});

  const auto z3 = zerosum::parse("3");
  const auto a3 = zerosum::minimal_zero_sums(z3);
  CHECK(std::set<Sequence>(a3.begin(), a3.end()) == std::set<Sequence>{{0, 1, 1}, {0, 3, 0}, {0, 0, 3}});
}

TEST_CASE("atoms agree with subset-scan oracle and Davenport values") {
  for (const char* text : {"2", "3", "4", "5", "6", "2x2", "2x4", "3x3", "2x2x2"}) {
    const auto group = zerosum::parse(text);
    const auto atoms = zerosum::minimal_zero_sums(group);
    CHECK(std::set<Sequence>(atoms.begin(), atoms.end()) == brute_atoms(group));
    for (const auto& a : atoms) CHECK(brute_minimal(group, a));
  }
  for (std::uint32_t n = 2; n <= 8; ++n)
    CHECK(zerosum::davenport_constant(zerosum::minimal_zero_sums(FiniteAbelianGroup::make({n}))) == n);
  CHECK(zerosum::davenport_constant(zerosum::minimal_zero_sums(zerosum::parse("2x2"))) == 3);
  CHECK(zerosum::davenport_constant(zerosum::minimal_zero_sums(zerosum::parse("2x4"))) == 5);
  CHECK_THROWS_AS(zerosum::minimal_zero_sums(zerosum::parse("9x9")), std::invalid_argument);
}

TEST_CASE("backend basics") {
  zerosum::Backend backend(zerosum::parse("2"));
  CHECK(backend.is_unit(Sequence{0, 0}));
  CHECK(backend.quotients(Sequence{0, 4}, 0) == std::vector<Sequence>{{0, 2}});
  CHECK(backend.element_sweep(4) == std::vector<Sequence>{{0, 2}, {0, 4}});
  CHECK(backend.exact_half_factorial() == true);
}

TEST_CASE("catenary lower bound") {
  auto check = zerosum::check_catenary_lower_bound(zerosum::parse("2x2"));
  CHECK(check.lower_bound == 3);
  CHECK(check.pass);
  check = zerosum::check_catenary_lower_bound(zerosum::parse("3"));
  CHECK(check.lower_bound == 3);
  CHECK(check.catenary >= 3);
  CHECK(check.sweep_bound == 9);
  check = zerosum::check_catenary_lower_bound(zerosum::parse("2"));
  CHECK(check.factorial);
  CHECK(check.catenary == 0);
  CHECK(check.pass);
}

TEST_CASE("engine catenary matches threshold oracle on B(Z/4)") {
  zerosum::Backend backend(zerosum::parse("4"));
  Engine engine(backend);
  for (const auto& s : backend.element_sweep(10)) {
    const auto& z = engine.factorizations(s);
    CHECK(catenary_degree(z) == oracle::threshold_catenary(z));
    CHECK(monotone_catenary_degree(z) == oracle::threshold_monotone_catenary(z));
  }
}
