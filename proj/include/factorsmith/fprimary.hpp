#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "factorsmith/core.hpp"

namespace factorsmith::fprimary {

/// Field element code: sum of digit_i * p^i over the polynomial basis 1, y, y^2, ...
using Elem = std::uint32_t;

/// GF(p^e) given by a monic irreducible modulus, with log/exp tables.
class FiniteField {
 public:
  /// `modulus` holds coefficients low to high and must be monic of degree e.
  /// Throws std::invalid_argument if p is not prime or the modulus is reducible.
  static FiniteField make(std::uint32_t p, std::vector<std::uint32_t> modulus);
  /// Relation "y4=y+1" (or "y^4 = 1 + y") defines the modulus y^4 - y - 1.
  static FiniteField parse(std::uint32_t p, const std::string& relation);
  /// Lexicographically first irreducible modulus of degree e.
  static FiniteField standard(std::uint32_t p, std::uint32_t e);

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return e_; }
  std::uint32_t size() const { return q_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::uint64_t n) const;
  /// The element y.
  Elem generator_y() const { return e_ > 1 ? p_ : 0; }

  std::vector<std::uint8_t> digits(Elem a) const;
  Elem from_digits(const std::vector<std::uint8_t>& d) const;
  std::string name(Elem a) const;
  /// Parses "0", "1+y+y^3", "y3+1", "2y2".
  Elem parse_element(const std::string& text) const;
  /// The subfield GF(p^k) as sorted element codes; requires k | e.
  std::vector<Elem> subfield(std::uint32_t k) const;
  std::string to_string() const;

 private:
  std::uint32_t p_ = 2;
  std::uint32_t e_ = 1;
  std::uint32_t q_ = 2;
  std::vector<std::uint32_t> modulus_;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
};

/// Row space over F_p in reduced row echelon form. Equal spaces have equal rows.
class FpSpan {
 public:
  using Vec = std::vector<std::uint8_t>;

  FpSpan() = default;
  FpSpan(std::uint32_t p, std::size_t dim) : p_(p), dim_(dim) {}

  /// Returns true if the dimension grew.
  bool insert(Vec v);
  bool contains(Vec v) const;
  bool contains(const FpSpan& other) const;
  std::size_t rank() const { return rows_.size(); }
  std::size_t ambient() const { return dim_; }
  std::uint32_t characteristic() const { return p_; }
  const std::vector<Vec>& rows() const { return rows_; }
  std::vector<std::size_t> pivots() const;
  /// Every vector of the space, in a fixed order; p^rank entries.
  std::vector<Vec> elements() const;

  friend bool operator==(const FpSpan& a, const FpSpan& b) { return a.rows_ == b.rows_; }
  friend auto operator<=>(const FpSpan& a, const FpSpan& b) { return a.rows_ <=> b.rows_; }

 private:
  void reduce(Vec& v) const;

  std::uint32_t p_ = 2;
  std::size_t dim_ = 0;
  std::vector<Vec> rows_;
};

/// L = GF(p^e) together with a subfield K = GF(p^k).
class FieldTower {
 public:
  FieldTower(FiniteField field, std::uint32_t subfield_degree);

  const FiniteField& L() const { return field_; }
  std::uint32_t k() const { return k_; }
  const std::vector<Elem>& K() const { return k_elements_; }
  /// F_p-basis of K.
  const std::vector<Elem>& k_basis() const { return k_basis_; }
  /// [L : K].
  std::uint32_t relative_degree() const { return field_.degree() / k_; }

  FpSpan::Vec vec(Elem a) const;
  Elem elem(const FpSpan::Vec& v) const;
  /// K-span of `gens` inside L, as an F_p row space.
  FpSpan k_span(const std::vector<Elem>& gens) const;
  /// K-span of { a*b : a in A, b in B }.
  FpSpan product_span(const FpSpan& a, const FpSpan& b) const;
  std::vector<Elem> members(const FpSpan& s) const;
  /// Every K-subspace of the K-space `s`.
  std::vector<FpSpan> k_subspaces(const FpSpan& s) const;
  std::string describe(const FpSpan& s) const;

 private:
  FiniteField field_;
  std::uint32_t k_;
  std::vector<Elem> k_elements_;
  std::vector<Elem> k_basis_;
};

/// Coefficient profile S_0 = K, S_1, ..., S_{alpha-1} with S_i = L from the
/// conductor degree alpha on; the ring K + S_1 X + ... + X^alpha L[[X]].
class ProfileRing {
 public:
  /// Throws std::invalid_argument if some S_i S_j is not inside S_{i+j}
  /// (the message names the offending pair) or S_0 differs from K.
  static ProfileRing make(FieldTower tower, std::vector<FpSpan> profile);
  /// Parses "K,V(1,y,y^2),L" or "K,0,L": entries K, 0, L or V(...) K-spans;
  /// the final L stands for every higher degree.
  static ProfileRing parse(FieldTower tower, const std::string& text);
  /// K + X^n L[[X]].
  static ProfileRing gap(FieldTower tower, std::uint32_t n);

  const FieldTower& tower() const { return tower_; }
  const FiniteField& L() const { return tower_.L(); }
  std::uint32_t conductor() const { return alpha_; }
  /// S_i for any i >= 0.
  const FpSpan& coefficient_space(std::uint32_t i) const;
  bool has_valuation(std::uint32_t v) const;
  std::string to_string() const;

  /// F_p dimension of the head space L[X]/X^alpha.
  std::size_t head_dim() const { return std::size_t{alpha_} * L().degree(); }
  using Poly = std::vector<Elem>;  // coefficients low to high
  FpSpan::Vec head_vec(const Poly& f) const;
  Poly head_poly(const FpSpan::Vec& v) const;
  /// f*g mod X^len.
  Poly mul(const Poly& f, const Poly& g, std::size_t len) const;
  /// Inverse mod X^alpha of a polynomial with non-zero constant term.
  Poly inverse(const Poly& f) const;
  /// X^v f lies in R (only degrees below alpha are constrained).
  bool valid_at(std::uint32_t v, const Poly& f) const;
  /// F_p-basis of R mod X^alpha.
  const std::vector<Poly>& residue_basis() const { return residue_basis_; }
  /// Units of R mod X^alpha.
  const std::vector<Poly>& residue_units() const { return residue_units_; }
  /// Units of L[X]/X^alpha, one per orbit under the residue units.
  const std::vector<Poly>& unit_representatives() const { return unit_reps_; }
  std::string poly_name(const Poly& f) const;

 private:
  explicit ProfileRing(FieldTower tower) : tower_(std::move(tower)), full_(tower_.L().characteristic(), tower_.L().degree()) {}

  FieldTower tower_;
  std::vector<FpSpan> profile_;
  FpSpan full_;
  std::uint32_t alpha_ = 1;
  std::vector<Poly> residue_basis_;
  std::vector<Poly> residue_units_;
  std::vector<Poly> unit_reps_;
};

/// Non-zero ideal X^v H + X^{v+alpha} L[[X]] of a profile ring: v is the
/// least valuation and H the span of leading parts mod X^alpha. Every
/// non-zero ideal has this form because X^alpha L[[X]] lies in R.
struct HeadIdeal {
  std::uint32_t v = 0;
  FpSpan head;

  friend bool operator==(const HeadIdeal&, const HeadIdeal&) = default;
  friend auto operator<=>(const HeadIdeal& a, const HeadIdeal& b) {
    if (auto c = a.v <=> b.v; c != 0) return c;
    return a.head <=> b.head;
  }
};

HeadIdeal unit_ideal(const ProfileRing& ring);
/// Ideal generated by power series given through their first terms; each
/// generator must be non-zero, and terms past degree v(g) + alpha are ignored.
HeadIdeal ideal_generated(const ProfileRing& ring, const std::vector<ProfileRing::Poly>& gens);
HeadIdeal maximal_ideal(const ProfileRing& ring);
HeadIdeal mul(const ProfileRing& ring, const HeadIdeal& a, const HeadIdeal& b);
HeadIdeal add(const ProfileRing& ring, const HeadIdeal& a, const HeadIdeal& b);
HeadIdeal power(const ProfileRing& ring, const HeadIdeal& a, std::uint32_t n);
bool is_subset(const ProfileRing& ring, const HeadIdeal& inner, const HeadIdeal& outer);
/// K-dimension of H.
std::uint32_t width(const ProfileRing& ring, const HeadIdeal& ideal);
bool is_principal(const ProfileRing& ring, const HeadIdeal& ideal);
std::string describe(const ProfileRing& ring, const HeadIdeal& ideal);

/// Element of R up to units: X^v u with u a unit of L[X]/X^alpha, stored in
/// the least representative of its orbit under R's residue units.
struct PowerClass {
  std::uint32_t v = 0;
  ProfileRing::Poly unit;

  friend bool operator==(const PowerClass&, const PowerClass&) = default;
  friend auto operator<=>(const PowerClass&, const PowerClass&) = default;
};

/// Backend for the reduced multiplicative monoid of a profile ring.
class ElementBackend {
 public:
  using element_type = PowerClass;

  explicit ElementBackend(ProfileRing ring);

  const ProfileRing& ring() const { return ring_; }
  PowerClass make(std::uint32_t v, const ProfileRing::Poly& unit) const;
  bool contains(const PowerClass& x) const;
  std::vector<PowerClass> classes_of_valuation(std::uint32_t v) const;

  std::string name() const;
  bool is_unit(const PowerClass& x) const { return x.v == 0; }
  PowerClass canonical(const PowerClass& x) const;
  std::string describe(const PowerClass& x) const;
  const PowerClass& atom(AtomIndex i) const { return atoms_[i]; }
  std::vector<AtomIndex> atoms_within(std::uint64_t bound) const;
  std::vector<AtomIndex> atom_candidates(const PowerClass& x) const;
  std::vector<PowerClass> quotients(const PowerClass& x, AtomIndex i) const;
  PowerClass multiply(const PowerClass& a, const PowerClass& b) const;
  std::vector<PowerClass> element_sweep(std::uint64_t bound) const;
  bool is_finite() const { return false; }
  std::optional<bool> exact_half_factorial() const;
  const std::vector<PowerClass>& atoms() const { return atoms_; }

 private:
  ProfileRing ring_;
  std::vector<PowerClass> atoms_;  // every atom; valuations below 2*alpha
};

struct HalfFactorialVerdict {
  bool half_factorial = false;
  std::optional<PowerClass> witness;  // an atom of valuation >= 2
  std::string witness_text;
};

/// Rank-one test: half-factorial iff every atom has valuation 1.
HalfFactorialVerdict is_half_factorial_rank1(const ElementBackend& backend);

/// Backend for I(R) (or its principal part) restricted to ideals of K-width
/// at most `max_width`. Divisors of an ideal never have larger width, so
/// the window is divisor-closed; products may leave it and are still
/// factored exactly.
class IdealBackend {
 public:
  using element_type = HeadIdeal;

  struct Options {
    std::uint32_t max_width = 2;
    bool principal_only = false;
  };

  IdealBackend(ProfileRing ring, Options options);

  const ProfileRing& ring() const { return ring_; }
  const Options& options() const { return options_; }
  bool in_window(const HeadIdeal& x) const;
  /// Divisor-closed scope used to restrict daleth to products in the window.
  bool in_scope(const HeadIdeal& x) const { return in_window(x); }
  bool is_atom(const HeadIdeal& x);
  /// Window ideals of valuation v, ascending.
  const std::vector<HeadIdeal>& window_of_valuation(std::uint32_t v);
  /// Every pair (A, B) of proper ideals with AB = x, A <= B.
  std::vector<std::pair<HeadIdeal, HeadIdeal>> factor_pairs(const HeadIdeal& x);

  std::string name() const;
  bool is_unit(const HeadIdeal& x) const { return x.v == 0; }
  HeadIdeal canonical(const HeadIdeal& x) const { return x; }
  std::string describe(const HeadIdeal& x) const { return fprimary::describe(ring_, x); }
  const HeadIdeal& atom(AtomIndex i) const { return atoms_[i]; }
  std::vector<AtomIndex> atoms_within(std::uint64_t bound);
  std::vector<AtomIndex> atom_candidates(const HeadIdeal& x);
  std::vector<HeadIdeal> quotients(const HeadIdeal& x, AtomIndex i);
  HeadIdeal multiply(const HeadIdeal& a, const HeadIdeal& b) const { return mul(ring_, a, b); }
  std::vector<HeadIdeal> element_sweep(std::uint64_t bound);
  bool is_finite() const { return false; }

 private:
  /// Proper ideals A with AB = x for some proper B, by valuation of A.
  std::set<HeadIdeal> divisor_candidates(const HeadIdeal& x);
  const std::vector<FpSpan>& closed_subspaces(const FpSpan& c);
  std::vector<HeadIdeal> cofactors(const HeadIdeal& x, const HeadIdeal& a);
  AtomIndex index_of(const HeadIdeal& atom);

  ProfileRing ring_;
  Options options_;
  std::map<FpSpan, std::vector<FpSpan>> subspace_cache_;
  std::map<std::uint32_t, std::vector<HeadIdeal>> window_;
  std::map<HeadIdeal, bool> atom_cache_;
  std::map<HeadIdeal, std::set<HeadIdeal>> divisor_cache_;
  std::vector<HeadIdeal> atoms_;
  std::map<HeadIdeal, AtomIndex> atom_index_;
};

/// The finite ring R / X^N L[[X]] with ideals as F_p row spaces over the
/// coordinates (c_0, ..., c_{N-1}).
class TruncatedRing {
 public:
  TruncatedRing(ProfileRing ring, std::uint32_t n);

  const ProfileRing& ring() const { return ring_; }
  std::uint32_t truncation() const { return n_; }
  std::size_t dim() const { return std::size_t{n_} * ring_.L().degree(); }
  /// F_p-dimension of the quotient ring.
  std::size_t ring_dim() const { return basis_.size(); }
  std::uint64_t size() const;

  FpSpan::Vec vec(const ProfileRing::Poly& f) const;
  ProfileRing::Poly poly(const FpSpan::Vec& v) const;
  const std::vector<ProfileRing::Poly>& basis() const { return basis_; }
  /// Every element of the quotient ring; throws above 2^20 elements.
  std::vector<ProfileRing::Poly> elements() const;

  FpSpan zero() const { return FpSpan(ring_.L().characteristic(), dim()); }
  FpSpan whole() const;
  FpSpan ideal(const std::vector<ProfileRing::Poly>& gens) const;
  FpSpan product(const FpSpan& a, const FpSpan& b) const;
  FpSpan sum(const FpSpan& a, const FpSpan& b) const;
  FpSpan maximal() const;
  /// Image of X^v H + X^{v+alpha} L[[X]].
  FpSpan image(const HeadIdeal& ideal) const;
  /// Every ideal, by repeatedly adjoining principal ideals to known ones.
  std::vector<FpSpan> enumerate_ideals(std::size_t element_cap = 1u << 16) const;
  std::string describe(const FpSpan& ideal) const;

 private:
  ProfileRing ring_;
  std::uint32_t n_;
  std::vector<ProfileRing::Poly> basis_;
};

/// Verdict of a quotient atom test: I is an atom of I(R) if no pair of
/// proper ideals of R / m^k multiplies to the image of I.
struct AtomCheck {
  bool atom = false;
  std::size_t ideals_scanned = 0;
  std::size_t pairs_scanned = 0;
  std::optional<std::pair<FpSpan, FpSpan>> witness;
};

/// Requires m^k inside I, with k the truncation of `quotient` measured in X.
AtomCheck ideal_monoid_atom_check(const TruncatedRing& quotient, const FpSpan& ideal);

/// Is there a pair of K-subspaces of V whose product span equals `target`?
struct SubspaceScan {
  bool realized = false;
  std::size_t subspaces = 0;
  std::size_t pairs = 0;
  std::optional<std::pair<FpSpan, FpSpan>> witness;
};
SubspaceScan subspace_product_scan(const FieldTower& tower, const FpSpan& v, const FpSpan& target);

/// [L : K] <= 2, decided by searching for two K-generators of L.
struct TwoGeneratedCheck {
  bool two_generated = false;
  std::uint32_t relative_degree = 0;
  std::optional<std::pair<Elem, Elem>> generators;
};
TwoGeneratedCheck two_generated_dual_check(const FieldTower& tower);

/// Half-factoriality of I(R) for a local rank-one ring, decided from atoms and m^2.
struct IdealHalfFactorialVerdict {
  bool half_factorial = false;
  bool element_half_factorial = false;
  std::optional<HeadIdeal> witness;  // nonprincipal atom inside m^2
  std::string reason;
};
IdealHalfFactorialVerdict ideal_monoid_half_factorial(IdealBackend& backend, std::uint64_t valuation_bound);

struct PrincipalContainment {
  bool contained = false;
  std::optional<HeadIdeal> witness;  // a proper principal ideal containing m^2
};
/// Searches principal ideals xR with v(x) <= 2 * alpha for one containing m^2.
PrincipalContainment m_squared_in_principal(const ProfileRing& ring);

/// One case of the W-analysis: W = a^{-1} T and whether W lies in V.
struct ScaledCase {
  Elem a = 0;
  Elem multiplier = 0;  // a^{-1}
  std::vector<Elem> w;
  bool inside_v = false;
};

/// Full check of the half-factorial ring with a non-half-factorial ideal monoid.
struct NonHalfFactorialIdealReport {
  std::string ring;
  std::string ideal;
  std::vector<Elem> target;  // leading coefficients of I at X^2
  bool ideal_in_m2 = false;
  bool m3_in_ideal = false;
  bool nonprincipal = false;
  AtomCheck atom;
  bool atom_by_divisor_search = false;
  SubspaceScan scan;
  std::vector<ScaledCase> cases;
  bool products_cover_l = false;  // L = { ab : a, b in V }
  bool element_half_factorial = false;
  bool ideal_half_factorial = true;
  bool invertible_half_factorial = false;
  bool multiplier_identity = false;  // (m : m) = K + X L[[X]] = <1, y^3 X>_R
  std::size_t quotient_ideals = 0;
  bool pass = false;
};

/// K = GF(2), L = GF(16) with y^4 = 1 + y, V = <1, y, y^2>_K, and
/// I = <y X^2, (1 + y^3) X^2>_R.
NonHalfFactorialIdealReport verify_nonhalffactorial_ideal_example();

/// K + X^n L[[X]]: not half-factorial, m^2 inside X^n R, daleth equality.
struct GapRingReport {
  std::string ring;
  std::uint32_t n = 0;
  std::uint32_t window_width = 0;
  std::uint64_t valuation_bound = 0;
  HalfFactorialVerdict element;
  PrincipalContainment containment;
  InvariantReport ideals;
  InvariantReport principal;
  bool ideal_daleth_equality = false;
  bool principal_daleth_equality = false;
  bool decomposition_holds = false;  // every swept I = U^k J with J an atom
  std::uint64_t decomposed = 0;
  bool pass = false;
};
GapRingReport verify_gap_ring(const FieldTower& tower, std::uint32_t n, std::uint32_t window_width);

}  // namespace factorsmith::fprimary
