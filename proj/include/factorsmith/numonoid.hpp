#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "factorsmith/core.hpp"

namespace factorsmith::numonoid {

/// Submonoid of (N0, +) with finite complement, stored by its minimal
/// generating set and the Apéry set with respect to the least generator.
class NumericalMonoid {
 public:
  /// Normalizes to the minimal generating set. Throws std::invalid_argument
  /// on an empty list, a non-positive generator, or gcd != 1.
  static NumericalMonoid make(std::vector<std::int64_t> generators);

  std::span<const std::int64_t> generators() const { return generators_; }
  std::int64_t multiplicity() const { return generators_.front(); }
  std::span<const std::int64_t> apery() const { return apery_; }
  /// Largest integer outside the monoid; -1 for N0.
  std::int64_t frobenius() const { return frobenius_; }
  bool contains(std::int64_t n) const;
  std::string to_string() const;

  bool operator==(const NumericalMonoid&) const = default;

 private:
  std::vector<std::int64_t> generators_;
  std::vector<std::int64_t> apery_;
  std::int64_t frobenius_ = -1;
};

/// Parses "2,3" or "3, 5, 7".
NumericalMonoid parse(const std::string& text);

/// gcd of consecutive differences of the minimal generators; this is
/// min Δ(H) for numerical monoids. Throws for N0, which is factorial.
std::int64_t min_delta_gcd(const NumericalMonoid& monoid);

/// Core backend: atoms are the minimal generators, division is subtraction.
class Backend {
 public:
  using element_type = std::int64_t;

  explicit Backend(NumericalMonoid monoid) : monoid_(std::move(monoid)) {}

  const NumericalMonoid& monoid() const { return monoid_; }

  std::string name() const { return "numerical " + monoid_.to_string(); }
  bool is_unit(std::int64_t x) const { return x == 0; }
  std::int64_t canonical(std::int64_t x) const { return x; }
  std::string describe(std::int64_t x) const { return std::to_string(x); }
  std::int64_t atom(AtomIndex i) const { return monoid_.generators()[i]; }
  std::vector<AtomIndex> atoms_within(std::uint64_t) const;
  std::vector<AtomIndex> atom_candidates(std::int64_t x) const;
  std::vector<std::int64_t> quotients(std::int64_t x, AtomIndex i) const;
  std::int64_t multiply(std::int64_t a, std::int64_t b) const { return a + b; }
  std::vector<std::int64_t> element_sweep(std::uint64_t bound) const;
  bool is_finite() const { return false; }
  /// Only N0 is half-factorial among numerical monoids.
  std::optional<bool> exact_half_factorial() const { return monoid_.generators().size() == 1; }

 private:
  NumericalMonoid monoid_;
};

/// Sweep bound used for equality claims: 4 * (frobenius + largest generator).
std::uint64_t completeness_bound(const NumericalMonoid& monoid);

}  // namespace factorsmith::numonoid
