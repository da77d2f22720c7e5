#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace factorsmith {

using Length = std::uint32_t;
using AtomIndex = std::uint32_t;

/// Raised when a factorization search exceeds its configured element budget.
/// Usually means the backend is not BF on the swept elements or the sweep
/// bound is too large for the machine.
class SweepOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A factorization as a sparse exponent vector over an atom table.
/// Terms are sorted by atom index and every multiplicity is positive.
class Factorization {
 public:
  using Term = std::pair<AtomIndex, std::uint32_t>;

  Factorization() = default;
  explicit Factorization(std::vector<Term> terms);

  static Factorization atom(AtomIndex index) { return Factorization({{index, 1}}); }

  std::span<const Term> terms() const { return terms_; }
  Length length() const { return length_; }
  bool empty() const { return terms_.empty(); }
  std::uint32_t multiplicity(AtomIndex index) const;
  AtomIndex min_atom() const { return terms_.front().first; }

  /// Returns this factorization with one more copy of `index`.
  Factorization times(AtomIndex index) const;

  friend bool operator==(const Factorization&, const Factorization&) = default;
  friend std::strong_ordering operator<=>(const Factorization& a, const Factorization& b) {
    return a.terms_ <=> b.terms_;
  }

  std::string to_string() const;

 private:
  std::vector<Term> terms_;
  Length length_ = 0;
};

/// Sorted, duplicate-free set of lengths.
struct LengthSet {
  std::vector<Length> values;

  bool operator==(const LengthSet&) const = default;
  bool is_singleton() const { return values.size() == 1; }
  Length min() const { return values.front(); }
  Length max() const { return values.back(); }
  bool contains(Length l) const;
  std::string to_string() const;
};

/// Exact non-negative rational p/q in lowest terms.
struct Rational {
  std::uint64_t num = 1;
  std::uint64_t den = 1;

  static Rational make(std::uint64_t num, std::uint64_t den);
  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);
  std::string to_string() const;
};

LengthSet make_length_set(std::vector<Length> values);
LengthSet sumset(const LengthSet& a, const LengthSet& b);

/// Gaps between consecutive members of `lengths`, ascending.
std::vector<Length> delta_of(const LengthSet& lengths);

/// max/min of `lengths`; the set {0} has elasticity 1.
Rational rho_of(const LengthSet& lengths);

/// Distance between two factorizations: cancel the common part and take
/// the larger residual length.
Length distance(const Factorization& z, const Factorization& w);

/// Catenary degree of a finite set of factorizations of one element:
/// the largest edge on a minimum spanning tree of the complete distance
/// graph (Prim, O(n^2)). Zero for a single factorization.
Length catenary_degree(std::span<const Factorization> factorizations);

/// Monotone catenary degree: for each ordered pair with |z| <= |z'|, the
/// minimax step over chains that never decrease in length, maximised over
/// all such pairs.
Length monotone_catenary_degree(std::span<const Factorization> factorizations);

/// Aggregated invariants over a sweep.
struct InvariantReport {
  std::string backend;
  std::uint64_t sweep_bound = 0;
  std::uint64_t elements = 0;
  std::uint64_t atoms = 0;
  std::vector<Length> delta_set;
  Rational elasticity;
  Length catenary = 0;
  Length monotone_catenary = 0;
  Length daleth = 0;
  bool half_factorial = true;
  bool lower_bound_only = false;
  /// Elements whose monotone catenary degree was skipped because the
  /// factorization set was larger than the configured limit.
  std::uint64_t monotone_skipped = 0;
  /// Atom pairs left out of daleth because their product falls outside the
  /// backend's divisor-closed scope.
  std::uint64_t daleth_pairs_skipped = 0;

  bool operator==(const InvariantReport&) const = default;
};

std::vector<Length> merge_delta(const std::vector<Length>& a, const std::vector<Length>& b);

}  // namespace factorsmith
