#include "factorsmith/quadorder.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace factorsmith::quadorder {

namespace {

using Wide = __int128;

Wide wabs(Wide x) { return x < 0 ? -x : x; }

Wide wgcd(Wide a, Wide b) {
  a = wabs(a);
  b = wabs(b);
  while (b) {
    const Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// g = u*a + v*b with g = gcd(a, b) >= 0.
Wide ext_gcd(Wide a, Wide b, Wide& u, Wide& v) {
  Wide old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const Wide q = old_r / r;
    Wide tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  u = old_s;
  v = old_t;
  return old_r;
}

Wide floor_mod(Wide a, Wide m) {
  Wide r = a % m;
  return r < 0 ? r + m : r;
}

Int narrow(Wide x) {
  if (x > std::numeric_limits<Int>::max() || x < std::numeric_limits<Int>::min()) {
    throw std::overflow_error("ideal arithmetic overflowed 64 bits");
  }
  return static_cast<Int>(x);
}

struct Vec {
  Wide x;
  Wide y;
};

// Lattice basis {(a,0), (b,c)} of the Z-module spanned by `vs`.
IdealHNF module_hnf(const std::vector<Vec>& vs) {
  Wide c = 0;
  Vec pivot{0, 0};
  for (const auto& w : vs) {
    if (w.y == 0) continue;
    Wide u, v;
    const Wide g = ext_gcd(c, w.y, u, v);
    pivot = {u * pivot.x + v * w.x, g};
    c = g;
  }
  if (c == 0) throw std::invalid_argument("module has rank < 2");
  Wide a = 0;
  for (const auto& w : vs) a = wgcd(a, w.x - (w.y / c) * pivot.x);
  if (a == 0) throw std::invalid_argument("module has rank < 2");
  return {narrow(a), narrow(floor_mod(pivot.x, a)), narrow(c)};
}

bool contains_wide(const IdealHNF& ideal, Wide x, Wide y) {
  if (y % ideal.c != 0) return false;
  return (x - (y / ideal.c) * ideal.b) % ideal.a == 0;
}

void check_ideal(const QuadOrder& order, const IdealHNF& h) {
  // tau * a and tau * (b + c tau) must stay in the module.
  const bool closed = contains_wide(h, 0, h.a) &&
                      contains_wide(h, Wide(h.c) * order.r(), Wide(h.b) + Wide(h.c) * order.s());
  if (!closed) throw std::logic_error("module " + h.to_string() + " is not an ideal of " + order.to_string());
}

std::vector<Vec> basis(const IdealHNF& h) { return {{h.a, 0}, {h.b, h.c}}; }

Vec times(const QuadOrder& order, const Vec& p, const Vec& q) {
  return {p.x * q.x + p.y * q.y * order.r(), p.x * q.y + p.y * q.x + p.y * q.y * order.s()};
}

// Coordinates of (x, y) in the basis {(a,0), (b,c)}; the vector must lie in the module.
Vec coordinates(const IdealHNF& h, const Vec& w) {
  const Wide v = w.y / h.c;
  const Wide u = (w.x - v * h.b) / h.a;
  return {u, v};
}

// Basis of {x in Z^m : x * A = 0} for an m x k integer matrix A.
std::vector<std::vector<Wide>> left_kernel(std::vector<std::vector<Wide>> a) {
  const std::size_t m = a.size();
  const std::size_t k = m ? a[0].size() : 0;
  std::vector<std::vector<Wide>> t(m, std::vector<Wide>(m, 0));
  for (std::size_t i = 0; i < m; ++i) t[i][i] = 1;
  std::size_t row = 0;
  for (std::size_t col = 0; col < k && row < m; ++col) {
    for (std::size_t i = row + 1; i < m; ++i) {
      if (a[i][col] == 0) continue;
      Wide u, v;
      const Wide g = ext_gcd(a[row][col], a[i][col], u, v);
      const Wide p = a[row][col] / g;
      const Wide q = a[i][col] / g;
      // [u v; -q p] is unimodular.
      for (std::size_t j = 0; j < k; ++j) {
        const Wide x = a[row][j], y = a[i][j];
        a[row][j] = u * x + v * y;
        a[i][j] = -q * x + p * y;
      }
      for (std::size_t j = 0; j < m; ++j) {
        const Wide x = t[row][j], y = t[i][j];
        t[row][j] = u * x + v * y;
        t[i][j] = -q * x + p * y;
      }
    }
    if (a[row][col] != 0) ++row;
  }
  return {t.begin() + static_cast<std::ptrdiff_t>(row), t.end()};
}

FracIdeal normalize(Wide den, IdealHNF num) {
  if (den < 0) throw std::logic_error("negative denominator");
  const Wide g = wgcd(den, num.c);
  return {narrow(den / g), {narrow(num.a / g), narrow(num.b / g), narrow(num.c / g)}};
}

Int powmod(Int base, Int exp, Int mod) {
  Wide result = 1;
  Wide b = floor_mod(base, mod);
  while (exp > 0) {
    if (exp & 1) result = result * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return static_cast<Int>(result);
}

// Roots of t^2 + s t - r modulo m, ascending.
std::vector<Int> quadratic_roots(Int s, Int r, Int m) {
  if (m == 1) return {0};
  std::vector<Int> roots{0};
  Int modulus = 1;
  for (const auto& [p, k] : factorize(m)) {
    // roots mod p, then Hensel-style lifting by exhaustive digit search
    std::vector<Int> local;
    for (Int t = 0; t < p; ++t)
      if (floor_mod(Wide(t) * t + Wide(s) * t - r, p) == 0) local.push_back(t);
    Int pk = p;
    for (int j = 1; j < k; ++j) {
      std::vector<Int> lifted;
      const Int next = pk * p;
      for (Int t : local)
        for (Int i = 0; i < p; ++i) {
          const Int cand = t + i * pk;
          if (floor_mod(Wide(cand) * cand + Wide(s) * cand - r, next) == 0) lifted.push_back(cand);
        }
      local = std::move(lifted);
      pk = next;
    }
    std::vector<Int> combined;
    Wide u, v;
    ext_gcd(modulus, pk, u, v);
    const Int total = modulus * pk;
    for (Int x : roots)
      for (Int y : local) {
        // z = x mod modulus, z = y mod pk
        const Wide z = x + Wide(modulus) * floor_mod(Wide(y - x) * u, pk);
        combined.push_back(static_cast<Int>(floor_mod(z, total)));
      }
    roots = std::move(combined);
    modulus = total;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

QuadraticField QuadraticField::make(Int d) {
  if (d == 0 || d == 1) throw std::invalid_argument("d must not be 0 or 1");
  for (Int q = 2; q * q <= (d < 0 ? -d : d); ++q)
    if (d % (q * q) == 0) throw std::invalid_argument("d = " + std::to_string(d) + " is not squarefree");
  return {d};
}

bool QuadraticField::half_omega() const { return floor_mod(d, 4) == 1; }

Int QuadraticField::discriminant() const { return half_omega() ? d : 4 * d; }

QuadOrder QuadOrder::make(Int d, Int f) {
  if (f < 1) throw std::invalid_argument("conductor must be positive");
  QuadOrder o;
  o.field_ = QuadraticField::make(d);
  o.f_ = f;
  if (o.field_.half_omega()) {
    o.s_ = f;
    o.r_ = f * f * ((d - 1) / 4);
  } else {
    o.s_ = 0;
    o.r_ = f * f * d;
  }
  return o;
}

Element QuadOrder::multiply(const Element& a, const Element& b) const {
  const Vec v = times(*this, {a.x, a.y}, {b.x, b.y});
  return {narrow(v.x), narrow(v.y)};
}

Int QuadOrder::norm(const Element& a) const {
  return narrow(Wide(a.x) * a.x + Wide(s_) * a.x * a.y - Wide(r_) * a.y * a.y);
}

std::string QuadOrder::to_string() const {
  return "O(d=" + std::to_string(field_.d) + ",f=" + std::to_string(f_) + ")";
}

std::string IdealHNF::to_string() const {
  std::ostringstream os;
  os << '[' << a << ',' << b << ',' << c << ']';
  return os.str();
}

std::string FracIdeal::to_string() const {
  return den == 1 ? num.to_string() : "(1/" + std::to_string(den) + ")" + num.to_string();
}

IdealHNF ideal_from_generators(const QuadOrder& order, const std::vector<Element>& gens) {
  std::vector<Vec> vs;
  for (const auto& g : gens) {
    vs.push_back({g.x, g.y});
    vs.push_back(times(order, {g.x, g.y}, {0, 1}));
  }
  const IdealHNF h = module_hnf(vs);
  check_ideal(order, h);
  return h;
}

IdealHNF principal(const QuadOrder& order, const Element& x) { return ideal_from_generators(order, {x}); }

bool contains(const IdealHNF& ideal, const Element& x) { return contains_wide(ideal, x.x, x.y); }

bool is_subset(const IdealHNF& inner, const IdealHNF& outer) {
  return contains_wide(outer, inner.a, 0) && contains_wide(outer, inner.b, inner.c);
}

IdealHNF mul(const QuadOrder& order, const IdealHNF& x, const IdealHNF& y) {
  std::vector<Vec> vs;
  for (const auto& p : basis(x))
    for (const auto& q : basis(y)) vs.push_back(times(order, p, q));
  const IdealHNF h = module_hnf(vs);
  check_ideal(order, h);
  return h;
}

IdealHNF add(const QuadOrder& order, const IdealHNF& x, const IdealHNF& y) {
  auto vs = basis(x);
  for (const auto& q : basis(y)) vs.push_back(q);
  const IdealHNF h = module_hnf(vs);
  check_ideal(order, h);
  return h;
}

FracIdeal colon(const QuadOrder& order, const IdealHNF& i, const IdealHNF& j) {
  // (I : J) = (1/a_J) { m in I : m * (b_J + c_J tau) in a_J I }, since a_J lies in J.
  const Wide n = j.a;
  const Vec beta{j.b, j.c};
  const auto bi = basis(i);
  const Vec c0 = coordinates(i, times(order, bi[0], beta));
  const Vec c1 = coordinates(i, times(order, bi[1], beta));
  const auto kernel = left_kernel({{c0.x, c0.y}, {c1.x, c1.y}, {n, 0}, {0, n}});
  std::vector<Vec> ms;
  for (const auto& row : kernel) {
    ms.push_back({row[0] * bi[0].x + row[1] * bi[1].x, row[0] * bi[0].y + row[1] * bi[1].y});
  }
  const IdealHNF m = module_hnf(ms);
  check_ideal(order, m);
  return normalize(n, m);
}

bool is_invertible(const QuadOrder& order, const IdealHNF& ideal) {
  const FracIdeal inv = colon(order, unit_ideal(), ideal);
  return mul(order, ideal, inv.num) == IdealHNF{inv.den, 0, inv.den};
}

QuadOrder ring_of_multipliers(const QuadOrder& order, const IdealHNF& ideal) {
  const FracIdeal ring = colon(order, ideal, ideal);
  // An overorder Z + (f/k) omega Z equals (1/k) (kZ + tau Z).
  const Int k = ring.den;
  if (order.f() % k != 0 || ring.num != IdealHNF{k, 0, 1}) {
    throw std::logic_error("(I:I) = " + ring.to_string() + " is not an order containing " + order.to_string());
  }
  return QuadOrder::make(order.d(), order.f() / k);
}

IdealHNF extend_to(const QuadOrder& order, const QuadOrder& over, const IdealHNF& ideal) {
  if (order.d() != over.d() || order.f() % over.f() != 0) throw std::invalid_argument("not an overorder");
  const Int k = order.f() / over.f();  // tau = k * tau'
  std::vector<Vec> vs{{ideal.a, 0}, {ideal.b, Wide(ideal.c) * k}};
  const IdealHNF h = module_hnf(vs);
  check_ideal(over, h);
  return h;
}

bool is_stable(const QuadOrder& order, const IdealHNF& ideal) {
  const QuadOrder over = ring_of_multipliers(order, ideal);
  return is_invertible(over, extend_to(order, over, ideal));
}

std::vector<IdealHNF> ideals_of_norm(const QuadOrder& order, Int n) {
  if (n < 1) throw std::invalid_argument("norm must be positive");
  std::vector<IdealHNF> out;
  // I = c * (a'Z + (b' + tau)Z) with a' | b'^2 + s b' - r, norm c^2 a'.
  for (Int c = 1; c * c <= n; ++c) {
    if (n % (c * c) != 0) continue;
    const Int ap = n / (c * c);
    for (Int bp : quadratic_roots(order.s(), order.r(), ap)) out.push_back({c * ap, c * bp, c});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IdealHNF> enumerate_ideals(const QuadOrder& order, Int bound) {
  std::vector<IdealHNF> out;
  for (Int n = 1; n <= bound; ++n) {
    auto part = ideals_of_norm(order, n);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::string to_string(Splitting s) {
  switch (s) {
    case Splitting::split: return "split";
    case Splitting::inert: return "inert";
    case Splitting::ramified: return "ramified";
  }
  return "?";
}

bool is_prime(Int n) {
  if (n < 2) return false;
  for (Int q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

std::vector<std::pair<Int, int>> factorize(Int n) {
  std::vector<std::pair<Int, int>> out;
  for (Int q = 2; q * q <= n; ++q) {
    int k = 0;
    while (n % q == 0) {
      n /= q;
      ++k;
    }
    if (k) out.emplace_back(q, k);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

Splitting splitting_type(const QuadraticField& field, Int p) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  const Int disc = field.discriminant();
  if (p == 2) {
    if (disc % 2 == 0) return Splitting::ramified;
    const Int m = floor_mod(disc, 8);
    return (m == 1 || m == 7) ? Splitting::split : Splitting::inert;
  }
  const Int residue = floor_mod(disc, p);
  if (residue == 0) return Splitting::ramified;
  return powmod(residue, (p - 1) / 2, p) == 1 ? Splitting::split : Splitting::inert;
}

bool pi_bijective(const QuadOrder& order) {
  for (const auto& [p, k] : factorize(order.f()))
    if (splitting_type(order.field(), p) == Splitting::split) return false;
  return true;
}

Int conductor_exponent(const QuadOrder& order, Int p) {
  if (!is_prime(p) || order.f() % p != 0) {
    throw std::invalid_argument("conductor exponent needs a prime dividing f = " + std::to_string(order.f()));
  }
  Int v = 0;
  for (Int f = order.f(); f % p == 0; f /= p) ++v;
  return splitting_type(order.field(), p) == Splitting::ramified ? 2 * v : v;
}

std::vector<IdealHNF> maximal_ideals_over(const QuadOrder& order, Int p) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  auto out = ideals_of_norm(order, p);
  if (out.empty()) out.push_back({p, 0, p});  // inert and prime to f: pO is maximal
  return out;
}

IdealHNF primary_part(const QuadOrder& order, const IdealHNF& ideal, Int p) {
  Int q = 1;
  for (Int n = ideal.norm(); n % p == 0; n /= p) q *= p;
  return add(order, ideal, {q, 0, q});
}

IdealBackend::IdealBackend(QuadOrder order, Options options) : order_(std::move(order)), options_(options) {
  if (options_.maximal) {
    const Int n = options_.maximal->norm();
    const auto factors = factorize(n);
    if (factors.size() != 1) throw std::invalid_argument("maximal ideal norm must be a prime power");
    prime_ = factors[0].first;
    const auto all = maximal_ideals_over(order_, prime_);
    if (std::find(all.begin(), all.end(), *options_.maximal) == all.end()) {
      throw std::invalid_argument(options_.maximal->to_string() + " is not a maximal ideal of " + order_.to_string());
    }
    for (const auto& m : all)
      if (m != *options_.maximal) other_maximal_.push_back(m);
  }
}

std::string IdealBackend::name() const {
  std::string out = options_.invertible_only ? "I*(" : "I(";
  out += order_.to_string() + ")";
  if (options_.maximal) out += " at " + options_.maximal->to_string();
  return out;
}

bool IdealBackend::in_component(const IdealHNF& ideal) {
  if (ideal == unit_ideal()) return true;
  if (auto it = component_cache_.find(ideal); it != component_cache_.end()) return it->second;
  bool ok = true;
  if (options_.maximal) {
    Int n = ideal.norm();
    while (n % prime_ == 0) n /= prime_;
    ok = n == 1 && is_subset(ideal, *options_.maximal);
    for (const auto& m : other_maximal_) ok = ok && !is_subset(ideal, m);
  }
  if (ok && options_.invertible_only) ok = is_invertible(order_, ideal);
  component_cache_.emplace(ideal, ok);
  return ok;
}

std::vector<Int> IdealBackend::norms_upto(Int bound) const {
  // Primary components only contain ideals of prime-power norm.
  std::vector<Int> out;
  if (options_.maximal) {
    for (Int n = prime_; n <= bound; n *= prime_) out.push_back(n);
  } else {
    for (Int n = 2; n <= bound; ++n) out.push_back(n);
  }
  return out;
}

const std::vector<IdealHNF>& IdealBackend::of_norm(Int n) {
  if (auto it = norm_cache_.find(n); it != norm_cache_.end()) return it->second;
  return norm_cache_.emplace(n, ideals_of_norm(order_, n)).first->second;
}

const std::vector<IdealHNF>& IdealBackend::supersets(const IdealHNF& x) {
  if (auto it = superset_cache_.find(x); it != superset_cache_.end()) return it->second;
  // B contains x forces N(B) | N(x).
  std::vector<IdealHNF> out;
  const Int n = x.norm();
  std::vector<Int> divisors;
  for (Int q = 1; q * q <= n; ++q) {
    if (n % q != 0) continue;
    divisors.push_back(q);
    if (q * q != n) divisors.push_back(n / q);
  }
  for (Int m : divisors)
    for (const auto& b : of_norm(m))
      if (is_subset(x, b) && in_component(b)) out.push_back(b);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return superset_cache_.emplace(x, std::move(out)).first->second;
}

bool IdealBackend::is_atom(const IdealHNF& ideal) {
  if (ideal == unit_ideal() || !in_component(ideal)) return false;
  if (auto it = atom_cache_.find(ideal); it != atom_cache_.end()) return it->second;
  std::vector<IdealHNF> proper;
  for (const auto& b : supersets(ideal))
    if (b != ideal && b != unit_ideal()) proper.push_back(b);
  bool atom = true;
  for (std::size_t i = 0; i < proper.size() && atom; ++i)
    for (std::size_t j = i; j < proper.size() && atom; ++j)
      if (mul(order_, proper[i], proper[j]) == ideal) atom = false;
  atom_cache_.emplace(ideal, atom);
  return atom;
}

AtomIndex IdealBackend::index_of(const IdealHNF& atom) {
  if (auto it = atom_index_.find(atom); it != atom_index_.end()) return it->second;
  const auto index = static_cast<AtomIndex>(atoms_.size());
  atoms_.push_back(atom);
  atom_index_.emplace(atom, index);
  return index;
}

void IdealBackend::ensure_dense_atoms(Int bound) {
  // Atoms up to the largest requested sweep bound get indices in norm order.
  for (Int n : norms_upto(bound)) {
    if (n <= dense_bound_) continue;
    for (const auto& x : of_norm(n))
      if (is_atom(x)) index_of(x);
  }
  dense_bound_ = std::max(dense_bound_, bound);
}

std::vector<AtomIndex> IdealBackend::atoms_within(std::uint64_t bound) {
  ensure_dense_atoms(static_cast<Int>(bound));
  std::vector<AtomIndex> out;
  for (AtomIndex i = 0; i < atoms_.size(); ++i)
    if (atoms_[i].norm() <= static_cast<Int>(bound)) out.push_back(i);
  return out;
}

std::vector<AtomIndex> IdealBackend::atom_candidates(const IdealHNF& x) {
  std::vector<AtomIndex> out;
  for (const auto& b : supersets(x))
    if (is_atom(b)) out.push_back(index_of(b));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IdealHNF> IdealBackend::quotients(const IdealHNF& x, AtomIndex i) {
  std::vector<IdealHNF> out;
  const IdealHNF& u = atoms_[i];
  if (!is_subset(x, u)) return out;
  for (const auto& c : supersets(x))
    if (mul(order_, u, c) == x) out.push_back(c);
  return out;
}

std::vector<IdealHNF> IdealBackend::element_sweep(std::uint64_t bound) {
  ensure_dense_atoms(static_cast<Int>(bound));
  std::vector<IdealHNF> out;
  for (Int n : norms_upto(static_cast<Int>(bound)))
    for (const auto& x : of_norm(n))
      if (in_component(x)) out.push_back(x);
  return out;
}

IdealBackend all_ideals_backend(const QuadOrder& order) { return IdealBackend(order, {}); }

IdealBackend invertible_backend(const QuadOrder& order) { return IdealBackend(order, {true, std::nullopt}); }

IdealBackend local_component_backend(const QuadOrder& order, const IdealHNF& maximal, bool invertible_only) {
  return IdealBackend(order, {invertible_only, maximal});
}

}  // namespace factorsmith::quadorder
