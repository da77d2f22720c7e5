#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "factorsmith/core.hpp"

namespace factorsmith::zerosum {

/// Finite abelian group Z/n_1 + ... + Z/n_r in invariant-factor form
/// (n_1 | n_2 | ... | n_r, every n_i >= 2). Elements are coded as integers
/// in [0, order) by mixed radix over the invariant factors.
class FiniteAbelianGroup {
 public:
  /// Accepts any list of cyclic orders and normalizes it; entries equal to
  /// 1 are dropped. Throws std::invalid_argument on entries < 1.
  static FiniteAbelianGroup make(const std::vector<std::uint32_t>& cyclic_orders);

  const std::vector<std::uint32_t>& invariant_factors() const { return factors_; }
  std::uint32_t order() const { return order_; }
  std::uint32_t exponent() const { return factors_.empty() ? 1 : factors_.back(); }
  std::uint32_t rank() const { return static_cast<std::uint32_t>(factors_.size()); }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t negate(std::uint32_t a) const;
  std::vector<std::uint32_t> coordinates(std::uint32_t a) const;
  std::string element_name(std::uint32_t a) const;
  std::string to_string() const;

  bool operator==(const FiniteAbelianGroup&) const = default;

 private:
  std::vector<std::uint32_t> factors_;
  std::uint32_t order_ = 1;
};

/// Parses "3", "2x2", "2,4" or "2x4".
FiniteAbelianGroup parse(const std::string& text);

/// A sequence over G as a count vector indexed by element code; index 0
/// (the identity) always holds 0.
using Sequence = std::vector<std::uint8_t>;

std::uint32_t sequence_length(const Sequence& s);

/// Minimal zero-sum sequences: every zero-sum-free S extended by -sigma(S)
/// when that element is not smaller than the largest element of S.
/// Sorted by length, then lexicographically on sorted element codes.
std::vector<Sequence> minimal_zero_sums(const FiniteAbelianGroup& group, std::uint32_t order_limit = 64);

/// Largest length of a minimal zero-sum sequence.
std::uint32_t davenport_constant(const std::vector<Sequence>& atoms);

class Backend {
 public:
  using element_type = Sequence;

  explicit Backend(FiniteAbelianGroup group, std::uint32_t order_limit = 64);

  const FiniteAbelianGroup& group() const { return group_; }
  std::uint32_t davenport() const { return davenport_; }

  std::string name() const { return "B(" + group_.to_string() + ")"; }
  bool is_unit(const Sequence& x) const { return sequence_length(x) == 0; }
  Sequence canonical(const Sequence& x) const { return x; }
  std::string describe(const Sequence& x) const;
  const Sequence& atom(AtomIndex i) const { return atoms_[i]; }
  std::vector<AtomIndex> atoms_within(std::uint64_t) const;
  std::vector<AtomIndex> atom_candidates(const Sequence& x) const;
  std::vector<Sequence> quotients(const Sequence& x, AtomIndex i) const;
  Sequence multiply(const Sequence& a, const Sequence& b) const;
  /// Zero-sum sequences with 1 <= length <= bound, in lexicographic order.
  std::vector<Sequence> element_sweep(std::uint64_t bound) const;
  bool is_finite() const { return false; }
  /// B(G) is half-factorial exactly when |G| <= 2.
  std::optional<bool> exact_half_factorial() const { return group_.order() <= 2; }

  Sequence from_elements(const std::vector<std::uint32_t>& codes) const;

 private:
  FiniteAbelianGroup group_;
  std::vector<Sequence> atoms_;
  std::uint32_t davenport_ = 0;
};

struct CatenaryBoundCheck {
  Length catenary = 0;
  std::uint32_t lower_bound = 0;  // max{exp(G), 1 + r(G)}
  bool factorial = false;         // |G| <= 2: the inequality is vacuous
  bool pass = false;
  std::uint64_t sweep_bound = 0;
};

/// Sweeps c(B(G)) over sequences of length <= bound (default 3 * D(G)) and
/// compares it with max{exp(G), 1 + r(G)}.
CatenaryBoundCheck check_catenary_lower_bound(const FiniteAbelianGroup& group,
                                              std::optional<std::uint64_t> bound = std::nullopt);

}  // namespace factorsmith::zerosum
