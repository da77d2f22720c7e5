#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "factorsmith/core.hpp"

namespace factorsmith::quadorder {

using Int = std::int64_t;

/// Q(sqrt d) with d squarefree, d not in {0, 1}.
struct QuadraticField {
  Int d = -1;

  static QuadraticField make(Int d);
  /// omega = (1 + sqrt d) / 2 when d = 1 mod 4, otherwise sqrt d.
  bool half_omega() const;
  Int discriminant() const;
  bool operator==(const QuadraticField&) const = default;
};

/// x + y*tau with tau = f*omega.
struct Element {
  Int x = 0;
  Int y = 0;
  bool operator==(const Element&) const = default;
};

/// The order Z + tau Z, tau = f*omega, with tau^2 = s*tau + r.
class QuadOrder {
 public:
  static QuadOrder make(Int d, Int f);

  const QuadraticField& field() const { return field_; }
  Int d() const { return field_.d; }
  Int f() const { return f_; }
  Int s() const { return s_; }
  Int r() const { return r_; }
  Int discriminant() const { return f_ * f_ * field_.discriminant(); }

  Element multiply(const Element& a, const Element& b) const;
  /// Field norm x^2 + s*x*y - r*y^2.
  Int norm(const Element& a) const;
  std::string to_string() const;

  bool operator==(const QuadOrder&) const = default;

 private:
  QuadraticField field_;
  Int f_ = 1;
  Int s_ = 0;
  Int r_ = 0;
};

/// Ideal aZ + (b + c*tau)Z in Hermite normal form: a > 0, c > 0,
/// 0 <= b < a, c | a, c | b. Norm [O : I] = a*c.
struct IdealHNF {
  Int a = 1;
  Int b = 0;
  Int c = 1;

  Int norm() const { return a * c; }
  std::string to_string() const;
  friend bool operator==(const IdealHNF&, const IdealHNF&) = default;
  friend auto operator<=>(const IdealHNF& x, const IdealHNF& y) {
    if (auto cmp = x.norm() <=> y.norm(); cmp != 0) return cmp;
    if (auto cmp = x.a <=> y.a; cmp != 0) return cmp;
    if (auto cmp = x.b <=> y.b; cmp != 0) return cmp;
    return x.c <=> y.c;
  }
};

inline IdealHNF unit_ideal() { return {1, 0, 1}; }

/// HNF of the ideal generated by `gens`; throws std::invalid_argument if
/// all generators vanish and std::logic_error if the module is not closed
/// under multiplication by tau.
IdealHNF ideal_from_generators(const QuadOrder& order, const std::vector<Element>& gens);
IdealHNF principal(const QuadOrder& order, const Element& x);
bool contains(const IdealHNF& ideal, const Element& x);
/// inner is a subset of outer.
bool is_subset(const IdealHNF& inner, const IdealHNF& outer);
IdealHNF mul(const QuadOrder& order, const IdealHNF& x, const IdealHNF& y);
IdealHNF add(const QuadOrder& order, const IdealHNF& x, const IdealHNF& y);

/// (1/den) * num with num an integral ideal and gcd(den, content(num)) = 1.
struct FracIdeal {
  Int den = 1;
  IdealHNF num;
  bool operator==(const FracIdeal&) const = default;
  std::string to_string() const;
};

/// (I : J) = {z in K : zJ subset of I}.
FracIdeal colon(const QuadOrder& order, const IdealHNF& i, const IdealHNF& j);
bool is_invertible(const QuadOrder& order, const IdealHNF& ideal);
/// (I : I) as an order Z + f'omega Z with f' | f.
QuadOrder ring_of_multipliers(const QuadOrder& order, const IdealHNF& ideal);
/// I rewritten over an overorder (which must contain the multipliers it needs).
IdealHNF extend_to(const QuadOrder& order, const QuadOrder& over, const IdealHNF& ideal);
/// Invertible as an ideal of (I : I).
bool is_stable(const QuadOrder& order, const IdealHNF& ideal);

/// Ideals of norm exactly n, ascending.
std::vector<IdealHNF> ideals_of_norm(const QuadOrder& order, Int n);
/// Ideals with norm <= bound, ascending.
std::vector<IdealHNF> enumerate_ideals(const QuadOrder& order, Int bound);

enum class Splitting { split, inert, ramified };
std::string to_string(Splitting s);
Splitting splitting_type(const QuadraticField& field, Int p);
/// The map from maximal ideals of O_K to maximal ideals of O is bijective
/// iff no prime dividing f splits.
bool pi_bijective(const QuadOrder& order);
/// max over primes q | pO_K of v_q(f O_K); requires p | f.
Int conductor_exponent(const QuadOrder& order, Int p);
std::vector<IdealHNF> maximal_ideals_over(const QuadOrder& order, Int p);

bool is_prime(Int n);
std::vector<std::pair<Int, int>> factorize(Int n);

/// Monoid of non-zero ideals of an order, optionally restricted to
/// invertible ideals and/or to the primary ideals of one maximal ideal.
/// Divisibility is decided by products over over-ideals, so the backend
/// is correct for the non-cancellative monoid I(O).
class IdealBackend {
 public:
  using element_type = IdealHNF;

  struct Options {
    bool invertible_only = false;
    std::optional<IdealHNF> maximal;  // restrict to m-primary ideals
  };

  IdealBackend(QuadOrder order, Options options);

  const QuadOrder& order() const { return order_; }
  const Options& options() const { return options_; }
  bool in_component(const IdealHNF& ideal);
  bool is_atom(const IdealHNF& ideal);

  std::string name() const;
  bool is_unit(const IdealHNF& x) const { return x == unit_ideal(); }
  IdealHNF canonical(const IdealHNF& x) const { return x; }
  std::string describe(const IdealHNF& x) const { return x.to_string(); }
  const IdealHNF& atom(AtomIndex i) const { return atoms_[i]; }
  std::vector<AtomIndex> atoms_within(std::uint64_t bound);
  std::vector<AtomIndex> atom_candidates(const IdealHNF& x);
  std::vector<IdealHNF> quotients(const IdealHNF& x, AtomIndex i);
  IdealHNF multiply(const IdealHNF& a, const IdealHNF& b) const { return mul(order_, a, b); }
  std::vector<IdealHNF> element_sweep(std::uint64_t bound);
  bool is_finite() const { return false; }

 private:
  std::vector<Int> norms_upto(Int bound) const;
  const std::vector<IdealHNF>& of_norm(Int n);
  const std::vector<IdealHNF>& supersets(const IdealHNF& x);
  AtomIndex index_of(const IdealHNF& atom);
  void ensure_dense_atoms(Int bound);

  QuadOrder order_;
  Options options_;
  std::vector<IdealHNF> other_maximal_;
  Int prime_ = 0;
  std::map<Int, std::vector<IdealHNF>> norm_cache_;
  std::map<IdealHNF, std::vector<IdealHNF>> superset_cache_;
  std::map<IdealHNF, bool> component_cache_;
  std::map<IdealHNF, bool> atom_cache_;
  std::vector<IdealHNF> atoms_;
  std::map<IdealHNF, AtomIndex> atom_index_;
  Int dense_bound_ = 1;
};

IdealBackend all_ideals_backend(const QuadOrder& order);
IdealBackend invertible_backend(const QuadOrder& order);
/// m-primary ideals for a maximal ideal m of O.
IdealBackend local_component_backend(const QuadOrder& order, const IdealHNF& maximal, bool invertible_only);

/// p-part I + p^{v_p(N(I))} O of an ideal.
IdealHNF primary_part(const QuadOrder& order, const IdealHNF& ideal, Int p);

}  // namespace factorsmith::quadorder
