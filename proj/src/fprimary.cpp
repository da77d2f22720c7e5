#include "factorsmith/fprimary.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "factorsmith/engine.hpp"

namespace factorsmith::fprimary {

namespace {

using Poly = ProfileRing::Poly;
using Vec = FpSpan::Vec;

bool is_small_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  std::uint32_t r = 1;
  std::uint32_t base = a % p;
  for (std::uint32_t e = p - 2; e; e >>= 1) {
    if (e & 1) r = r * base % p;
    base = base * base % p;
  }
  return r;
}

// Remainder of `a` modulo the monic polynomial `m`, coefficients mod p.
std::vector<std::uint32_t> poly_mod(std::vector<std::uint32_t> a, const std::vector<std::uint32_t>& m,
                                    std::uint32_t p) {
  const std::size_t dm = m.size() - 1;
  for (std::size_t i = a.size(); i-- > dm;) {
    const std::uint32_t c = a[i] % p;
    if (!c) continue;
    for (std::size_t j = 0; j <= dm; ++j) a[i - dm + j] = (a[i - dm + j] + (p - c) * m[j]) % p;
  }
  a.resize(std::min(a.size(), dm));
  return a;
}

// Polynomial terms "2y^3", "y3", "1" separated by '+' or '-'.
std::vector<std::int64_t> parse_poly(const std::string& text) {
  std::vector<std::int64_t> coeffs;
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '*') s += ch;
  if (s.empty()) throw std::invalid_argument("empty polynomial");
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      if (s[i] == '-') sign = -1;
      ++i;
    }
    std::int64_t coef = 1;
    bool has_coef = false;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      coef = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) coef = coef * 10 + (s[i++] - '0');
      has_coef = true;
    }
    std::size_t exponent = 0;
    if (i < s.size() && (s[i] == 'y' || s[i] == 'Y')) {
      ++i;
      exponent = 1;
      if (i < s.size() && s[i] == '^') ++i;
      if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        exponent = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) exponent = exponent * 10 + (s[i++] - '0');
      }
    } else if (!has_coef) {
      throw std::invalid_argument("bad polynomial term in '" + text + "'");
    }
    if (i < s.size() && s[i] != '+' && s[i] != '-') throw std::invalid_argument("bad polynomial '" + text + "'");
    if (coeffs.size() <= exponent) coeffs.resize(exponent + 1, 0);
    coeffs[exponent] += sign * coef;
  }
  return coeffs;
}

std::size_t valuation_of(const Poly& f) {
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i]) return i;
  return f.size();
}

Poly shift(const Poly& f, std::size_t d, std::size_t len) {
  Poly out(len, 0);
  for (std::size_t i = 0; i + d < len && i < f.size(); ++i) out[i + d] = f[i];
  return out;
}

FpSpan closure(const ProfileRing& ring, const std::vector<Poly>& gens) {
  FpSpan h(ring.L().characteristic(), ring.head_dim());
  for (const auto& g : gens)
    for (const auto& r : ring.residue_basis()) h.insert(ring.head_vec(ring.mul(r, g, ring.conductor())));
  return h;
}

std::vector<Poly> rows_as_polys(const ProfileRing& ring, const FpSpan& s) {
  std::vector<Poly> out;
  for (const auto& row : s.rows()) out.push_back(ring.head_poly(row));
  return out;
}

bool has_unit(const ProfileRing& ring, const FpSpan& h) {
  const auto e = ring.L().degree();
  return !h.rows().empty() && h.pivots().front() < e;
}

Poly unit_of(const ProfileRing& ring, const FpSpan& h) {
  if (!has_unit(ring, h)) throw std::logic_error("head space without a unit");
  return ring.head_poly(h.rows().front());
}

bool span_valid_at(const ProfileRing& ring, std::uint32_t v, const FpSpan& h) {
  for (const auto& row : h.rows())
    if (!ring.valid_at(v, ring.head_poly(row))) return false;
  return true;
}

FpSpan scale(const ProfileRing& ring, const FpSpan& h, const Poly& f) {
  FpSpan out(ring.L().characteristic(), ring.head_dim());
  for (const auto& row : h.rows()) out.insert(ring.head_vec(ring.mul(ring.head_poly(row), f, ring.conductor())));
  return out;
}

// Every R-closed subspace of the R-closed space `c` that contains a unit.
std::vector<FpSpan> closed_unit_subspaces(const ProfileRing& ring, const FpSpan& c) {
  const auto elements = c.elements();
  std::set<FpSpan> seen;
  std::deque<FpSpan> queue;
  for (const auto& x : elements) {
    const Poly f = ring.head_poly(x);
    if (!f[0]) continue;
    FpSpan s = closure(ring, {f});
    if (seen.insert(s).second) queue.push_back(std::move(s));
  }
  while (!queue.empty()) {
    const FpSpan s = queue.front();
    queue.pop_front();
    for (const auto& x : elements) {
      if (s.contains(x)) continue;
      FpSpan t = s;
      for (const auto& r : ring.residue_basis())
        t.insert(ring.head_vec(ring.mul(r, ring.head_poly(x), ring.conductor())));
      if (seen.insert(t).second) queue.push_back(std::move(t));
    }
  }
  return {seen.begin(), seen.end()};
}

}  // namespace

// ---------------------------------------------------------------- fields

FiniteField FiniteField::make(std::uint32_t p, std::vector<std::uint32_t> modulus) {
  if (!is_small_prime(p) || p > 251) throw std::invalid_argument("characteristic must be a prime below 256");
  if (modulus.size() < 2 || modulus.back() != 1) throw std::invalid_argument("modulus must be monic of degree >= 1");
  for (auto c : modulus)
    if (c >= p) throw std::invalid_argument("modulus coefficients must lie in [0, p)");
  FiniteField f;
  f.p_ = p;
  f.e_ = static_cast<std::uint32_t>(modulus.size() - 1);
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < f.e_; ++i) {
    q *= p;
    if (q > (1u << 16)) throw std::invalid_argument("field too large (limit 2^16 elements)");
  }
  f.q_ = static_cast<std::uint32_t>(q);
  f.modulus_ = modulus;

  // Trial division by every monic polynomial of degree <= e/2.
  for (std::uint32_t d = 1; 2 * d <= f.e_; ++d) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      std::vector<std::uint32_t> g(d + 1, 0);
      std::uint64_t c = code;
      for (std::uint32_t i = 0; i < d; ++i, c /= p) g[i] = static_cast<std::uint32_t>(c % p);
      g[d] = 1;
      const auto r = poly_mod(modulus, g, p);
      if (std::all_of(r.begin(), r.end(), [](auto x) { return x == 0; }))
        throw std::invalid_argument("modulus is reducible over GF(" + std::to_string(p) + ")");
    }
  }

  auto slow_mul = [&](Elem a, Elem b) {
    const auto da = f.digits(a);
    const auto db = f.digits(b);
    std::vector<std::uint32_t> prod(2 * f.e_, 0);
    for (std::uint32_t i = 0; i < f.e_; ++i)
      for (std::uint32_t j = 0; j < f.e_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
    auto r = poly_mod(prod, f.modulus_, p);
    std::vector<std::uint8_t> out(f.e_, 0);
    for (std::size_t i = 0; i < r.size(); ++i) out[i] = static_cast<std::uint8_t>(r[i]);
    return f.from_digits(out);
  };

  for (Elem g = 1; g < f.q_; ++g) {
    std::vector<Elem> powers{1};
    Elem x = g;
    while (x != 1 && powers.size() < f.q_) {
      powers.push_back(x);
      x = slow_mul(x, g);
    }
    if (powers.size() != f.q_ - 1) continue;
    f.exp_.resize(2 * (f.q_ - 1));
    f.log_.assign(f.q_, 0);
    for (std::uint32_t i = 0; i < f.q_ - 1; ++i) {
      f.exp_[i] = f.exp_[i + f.q_ - 1] = powers[i];
      f.log_[powers[i]] = i;
    }
    return f;
  }
  throw std::logic_error("no primitive element found");
}

FiniteField FiniteField::parse(std::uint32_t p, const std::string& relation) {
  const auto eq = relation.find('=');
  if (eq == std::string::npos) throw std::invalid_argument("modulus relation needs '=', e.g. y4=y+1");
  const auto lhs = parse_poly(relation.substr(0, eq));
  const auto rhs = parse_poly(relation.substr(eq + 1));
  const std::size_t e = lhs.size() - 1;
  if (e < 1 || lhs[e] != 1 || std::any_of(lhs.begin(), lhs.end() - 1, [](auto c) { return c != 0; }))
    throw std::invalid_argument("left side of the modulus relation must be a single power y^e");
  if (rhs.size() > e) throw std::invalid_argument("right side must have degree below e");
  std::vector<std::uint32_t> modulus(e + 1, 0);
  modulus[e] = 1;
  const auto pp = static_cast<std::int64_t>(p);
  for (std::size_t i = 0; i < rhs.size(); ++i) modulus[i] = static_cast<std::uint32_t>(((-rhs[i]) % pp + pp) % pp);
  return make(p, modulus);
}

FiniteField FiniteField::standard(std::uint32_t p, std::uint32_t e) {
  if (e < 1) throw std::invalid_argument("field degree must be positive");
  if (!is_small_prime(p)) throw std::invalid_argument("characteristic must be prime");
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < e; ++i) count *= p;
  for (std::uint64_t code = 0; code < count; ++code) {
    std::vector<std::uint32_t> m(e + 1, 0);
    std::uint64_t c = code;
    for (std::uint32_t i = 0; i < e; ++i, c /= p) m[i] = static_cast<std::uint32_t>(c % p);
    m[e] = 1;
    if (e > 1 && m[0] == 0) continue;
    try {
      return make(p, m);
    } catch (const std::invalid_argument&) {
    }
  }
  throw std::logic_error("no irreducible polynomial found");
}

Elem FiniteField::add(Elem a, Elem b) const {
  if (p_ == 2) return a ^ b;
  Elem out = 0;
  Elem scale = 1;
  while (a || b) {
    out += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return out;
}

Elem FiniteField::neg(Elem a) const {
  if (p_ == 2) return a;
  Elem out = 0;
  Elem scale = 1;
  while (a) {
    out += ((p_ - a % p_) % p_) * scale;
    a /= p_;
    scale *= p_;
  }
  return out;
}

Elem FiniteField::mul(Elem a, Elem b) const {
  if (!a || !b) return 0;
  return exp_[log_[a] + log_[b]];
}

Elem FiniteField::inv(Elem a) const {
  if (!a) throw std::domain_error("inverse of zero");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

Elem FiniteField::pow(Elem a, std::uint64_t n) const {
  if (n == 0) return 1;
  if (!a) return 0;
  return exp_[(static_cast<std::uint64_t>(log_[a]) * (n % (q_ - 1))) % (q_ - 1)];
}

std::vector<std::uint8_t> FiniteField::digits(Elem a) const {
  std::vector<std::uint8_t> d(e_, 0);
  for (std::uint32_t i = 0; i < e_; ++i, a /= p_) d[i] = static_cast<std::uint8_t>(a % p_);
  return d;
}

Elem FiniteField::from_digits(const std::vector<std::uint8_t>& d) const {
  Elem out = 0;
  for (std::size_t i = d.size(); i-- > 0;) out = out * p_ + d[i];
  return out;
}

std::string FiniteField::name(Elem a) const {
  if (!a) return "0";
  const auto d = digits(a);
  std::string out;
  for (std::uint32_t i = 0; i < e_; ++i) {
    if (!d[i]) continue;
    if (!out.empty()) out += '+';
    if (i == 0) {
      out += std::to_string(d[i]);
      continue;
    }
    if (d[i] > 1) out += std::to_string(d[i]);
    out += 'y';
    if (i > 1) out += '^' + std::to_string(i);
  }
  return out;
}

Elem FiniteField::parse_element(const std::string& text) const {
  const auto coeffs = parse_poly(text);
  Elem out = 0;
  const auto pp = static_cast<std::int64_t>(p_);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const auto c = static_cast<std::uint32_t>((coeffs[i] % pp + pp) % pp);
    Elem term = mul(c, pow(e_ > 1 ? p_ : 0, i));
    if (e_ == 1 && i > 0) throw std::invalid_argument("prime field has no y");
    if (i == 0) term = c;
    out = add(out, term);
  }
  return out;
}

std::vector<Elem> FiniteField::subfield(std::uint32_t k) const {
  if (k == 0 || e_ % k) throw std::invalid_argument("subfield degree must divide " + std::to_string(e_));
  std::uint64_t pk = 1;
  for (std::uint32_t i = 0; i < k; ++i) pk *= p_;
  std::vector<Elem> out;
  for (Elem a = 0; a < q_; ++a)
    if (pow(a, pk) == a) out.push_back(a);
  return out;
}

std::string FiniteField::to_string() const {
  std::string rel = "y";
  if (e_ > 1) rel += '^' + std::to_string(e_);
  std::vector<std::uint8_t> rhs(e_, 0);
  for (std::uint32_t i = 0; i < e_; ++i) rhs[i] = static_cast<std::uint8_t>((p_ - modulus_[i]) % p_);
  return "GF(" + std::to_string(q_) + ")[" + rel + "=" + name(from_digits(rhs)) + "]";
}

// ------------------------------------------------------------ row spaces

void FpSpan::reduce(Vec& v) const {
  for (const auto& row : rows_) {
    std::size_t piv = 0;
    while (!row[piv]) ++piv;
    const std::uint32_t c = v[piv];
    if (!c) continue;
    for (std::size_t j = piv; j < dim_; ++j) v[j] = static_cast<std::uint8_t>((v[j] + (p_ - c) * row[j]) % p_);
  }
}

bool FpSpan::insert(Vec v) {
  if (v.size() != dim_) throw std::invalid_argument("vector dimension mismatch");
  reduce(v);
  std::size_t piv = 0;
  while (piv < dim_ && !v[piv]) ++piv;
  if (piv == dim_) return false;
  const std::uint32_t inv = inverse_mod(v[piv], p_);
  for (auto& x : v) x = static_cast<std::uint8_t>(x * inv % p_);
  for (auto& row : rows_) {
    const std::uint32_t c = row[piv];
    if (!c) continue;
    for (std::size_t j = 0; j < dim_; ++j) row[j] = static_cast<std::uint8_t>((row[j] + (p_ - c) * v[j]) % p_);
  }
  auto pos = rows_.begin();
  while (pos != rows_.end()) {
    std::size_t q = 0;
    while (!(*pos)[q]) ++q;
    if (q > piv) break;
    ++pos;
  }
  rows_.insert(pos, std::move(v));
  return true;
}

bool FpSpan::contains(Vec v) const {
  reduce(v);
  return std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; });
}

bool FpSpan::contains(const FpSpan& other) const {
  return std::all_of(other.rows_.begin(), other.rows_.end(), [&](const Vec& r) { return contains(r); });
}

std::vector<std::size_t> FpSpan::pivots() const {
  std::vector<std::size_t> out;
  for (const auto& row : rows_) {
    std::size_t q = 0;
    while (!row[q]) ++q;
    out.push_back(q);
  }
  return out;
}

std::vector<Vec> FpSpan::elements() const {
  std::vector<Vec> out{Vec(dim_, 0)};
  for (const auto& row : rows_) {
    const std::size_t n = out.size();
    for (std::uint32_t c = 1; c < p_; ++c)
      for (std::size_t i = 0; i < n; ++i) {
        Vec v = out[i];
        for (std::size_t j = 0; j < dim_; ++j) v[j] = static_cast<std::uint8_t>((v[j] + c * row[j]) % p_);
        out.push_back(std::move(v));
      }
  }
  return out;
}

// ----------------------------------------------------------------- tower

FieldTower::FieldTower(FiniteField field, std::uint32_t subfield_degree)
    : field_(std::move(field)), k_(subfield_degree), k_elements_(field_.subfield(subfield_degree)) {
  FpSpan s(field_.characteristic(), field_.degree());
  for (Elem a : k_elements_)
    if (s.insert(vec(a))) k_basis_.push_back(a);
}

Vec FieldTower::vec(Elem a) const { return field_.digits(a); }
Elem FieldTower::elem(const Vec& v) const { return field_.from_digits(v); }

FpSpan FieldTower::k_span(const std::vector<Elem>& gens) const {
  FpSpan s(field_.characteristic(), field_.degree());
  for (Elem g : gens)
    for (Elem b : k_basis_) s.insert(vec(field_.mul(b, g)));
  return s;
}

FpSpan FieldTower::product_span(const FpSpan& a, const FpSpan& b) const {
  FpSpan s(field_.characteristic(), field_.degree());
  for (const auto& x : a.rows())
    for (const auto& y : b.rows()) s.insert(vec(field_.mul(elem(x), elem(y))));
  return s;
}

std::vector<Elem> FieldTower::members(const FpSpan& s) const {
  std::vector<Elem> out;
  for (const auto& v : s.elements()) out.push_back(elem(v));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FpSpan> FieldTower::k_subspaces(const FpSpan& s) const {
  const auto elements = members(s);
  std::set<FpSpan> seen{FpSpan(field_.characteristic(), field_.degree())};
  std::deque<FpSpan> queue(seen.begin(), seen.end());
  while (!queue.empty()) {
    const FpSpan cur = queue.front();
    queue.pop_front();
    for (Elem a : elements) {
      if (cur.contains(vec(a))) continue;
      FpSpan next = cur;
      for (Elem b : k_basis_) next.insert(vec(field_.mul(a, b)));
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  return {seen.begin(), seen.end()};
}

std::string FieldTower::describe(const FpSpan& s) const {
  const auto m = members(s);
  std::string out = "{";
  for (std::size_t i = 0; i < m.size(); ++i) out += (i ? ", " : "") + field_.name(m[i]);
  return out + "}";
}

// ---------------------------------------------------------- profile ring

ProfileRing ProfileRing::make(FieldTower tower, std::vector<FpSpan> profile) {
  ProfileRing r(std::move(tower));
  const auto& L = r.tower_.L();
  r.full_ = FpSpan(L.characteristic(), L.degree());
  for (Elem a = 1; a < L.size(); a *= L.characteristic()) r.full_.insert(r.tower_.vec(a));
  if (profile.empty()) throw std::invalid_argument("profile needs at least S_0");
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (profile[i].ambient() != L.degree()) throw std::invalid_argument("profile entry has wrong dimension");
    if (r.tower_.k_span(r.tower_.members(profile[i])) != profile[i])
      throw std::invalid_argument("profile entry S_" + std::to_string(i) + " is not a K-subspace");
  }
  if (profile[0] != r.tower_.k_span({1})) throw std::invalid_argument("S_0 must equal K");
  while (profile.size() > 1 && profile.back() == r.full_) profile.pop_back();
  r.profile_ = std::move(profile);
  r.alpha_ = static_cast<std::uint32_t>(r.profile_.size());
  for (std::size_t i = 0; i < r.alpha_; ++i)
    for (std::size_t j = i; i + j < r.alpha_; ++j)
      for (const auto& a : r.profile_[i].rows())
        for (const auto& b : r.profile_[j].rows())
          if (!r.profile_[i + j].contains(r.tower_.vec(L.mul(r.tower_.elem(a), r.tower_.elem(b)))))
            throw std::invalid_argument("profile not closed: S_" + std::to_string(i) + " * S_" + std::to_string(j) +
                                        " is not inside S_" + std::to_string(i + j));

  for (std::uint32_t i = 0; i < r.alpha_; ++i)
    for (const auto& b : r.profile_[i].rows()) {
      Poly f(r.alpha_, 0);
      f[i] = r.tower_.elem(b);
      r.residue_basis_.push_back(f);
    }

  // Residue units: c_0 in K*, c_i in S_i.
  std::vector<std::vector<Elem>> choices;
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < r.alpha_; ++i) {
    auto m = r.tower_.members(r.profile_[i]);
    if (i == 0) m.erase(m.begin());
    count *= m.size();
    if (count > (1u << 16)) throw std::invalid_argument("residue unit group too large");
    choices.push_back(std::move(m));
  }
  std::vector<std::size_t> idx(r.alpha_, 0);
  while (true) {
    Poly f(r.alpha_);
    for (std::uint32_t i = 0; i < r.alpha_; ++i) f[i] = choices[i][idx[i]];
    r.residue_units_.push_back(f);
    std::uint32_t i = 0;
    while (i < r.alpha_ && ++idx[i] == choices[i].size()) idx[i++] = 0;
    if (i == r.alpha_) break;
  }

  // Orbit representatives of units of L[X]/X^alpha.
  std::uint64_t total = L.size() - 1;
  for (std::uint32_t i = 1; i < r.alpha_; ++i) total *= L.size();
  if (total > (1u << 20)) throw std::invalid_argument("unit group of L[X]/X^alpha too large");
  std::set<Poly> reps;
  for (std::uint64_t code = 0; code < total; ++code) {
    Poly u(r.alpha_);
    std::uint64_t c = code;
    u[0] = static_cast<Elem>(c % (L.size() - 1)) + 1;
    c /= L.size() - 1;
    for (std::uint32_t i = 1; i < r.alpha_; ++i, c /= L.size()) u[i] = static_cast<Elem>(c % L.size());
    Poly best = u;
    for (const auto& eps : r.residue_units_) best = std::min(best, r.mul(u, eps, r.alpha_));
    if (best == u) reps.insert(u);
  }
  r.unit_reps_.assign(reps.begin(), reps.end());
  return r;
}

ProfileRing ProfileRing::parse(FieldTower tower, const std::string& text) {
  std::vector<std::string> entries;
  std::string cur;
  int depth = 0;
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      entries.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) entries.push_back(cur);
  if (entries.empty() || entries.back() != "L") throw std::invalid_argument("profile must end with L");
  std::vector<FpSpan> profile;
  const auto& L = tower.L();
  for (const auto& e : entries) {
    if (e == "K") {
      profile.push_back(tower.k_span({1}));
    } else if (e == "0") {
      profile.push_back(FpSpan(L.characteristic(), L.degree()));
    } else if (e == "L") {
      std::vector<Elem> all(L.size());
      std::iota(all.begin(), all.end(), 0);
      profile.push_back(tower.k_span(all));
    } else {
      std::string body = e;
      if (!body.empty() && (body[0] == 'V' || body[0] == 'v')) body.erase(0, 1);
      if (body.size() < 2 || body.front() != '(' || body.back() != ')')
        throw std::invalid_argument("bad profile entry '" + e + "'");
      body = body.substr(1, body.size() - 2);
      std::vector<Elem> gens;
      std::istringstream is(body);
      std::string tok;
      while (std::getline(is, tok, ',')) gens.push_back(L.parse_element(tok));
      profile.push_back(tower.k_span(gens));
    }
  }
  return make(std::move(tower), std::move(profile));
}

ProfileRing ProfileRing::gap(FieldTower tower, std::uint32_t n) {
  if (n < 1) throw std::invalid_argument("gap must be positive");
  std::vector<FpSpan> profile{tower.k_span({1})};
  for (std::uint32_t i = 1; i < n; ++i) profile.emplace_back(tower.L().characteristic(), tower.L().degree());
  std::vector<Elem> all(tower.L().size());
  std::iota(all.begin(), all.end(), 0);
  profile.push_back(tower.k_span(all));
  return make(std::move(tower), std::move(profile));
}

const FpSpan& ProfileRing::coefficient_space(std::uint32_t i) const { return i < alpha_ ? profile_[i] : full_; }

bool ProfileRing::has_valuation(std::uint32_t v) const { return coefficient_space(v).rank() > 0; }

std::string ProfileRing::to_string() const {
  const auto& F = L();
  const std::uint32_t kq = static_cast<std::uint32_t>(tower_.K().size());
  std::string out = "GF(" + std::to_string(kq) + ")";
  for (std::uint32_t i = 1; i < alpha_; ++i) {
    if (!profile_[i].rank()) continue;
    out += "+" + tower_.describe(profile_[i]) + (i == 1 ? "X" : "X^" + std::to_string(i));
  }
  out += "+X";
  if (alpha_ > 1) out += "^" + std::to_string(alpha_);
  out += "GF(" + std::to_string(F.size()) + ")[[X]]";
  return out;
}

Vec ProfileRing::head_vec(const Poly& f) const {
  Vec out;
  out.reserve(head_dim());
  for (std::uint32_t i = 0; i < alpha_; ++i) {
    const auto d = L().digits(i < f.size() ? f[i] : 0);
    out.insert(out.end(), d.begin(), d.end());
  }
  return out;
}

Poly ProfileRing::head_poly(const Vec& v) const {
  Poly out(alpha_);
  const auto e = L().degree();
  for (std::uint32_t i = 0; i < alpha_; ++i) out[i] = L().from_digits(Vec(v.begin() + i * e, v.begin() + (i + 1) * e));
  return out;
}

Poly ProfileRing::mul(const Poly& f, const Poly& g, std::size_t len) const {
  Poly out(len, 0);
  const auto& F = L();
  for (std::size_t i = 0; i < f.size() && i < len; ++i) {
    if (!f[i]) continue;
    for (std::size_t j = 0; j < g.size() && i + j < len; ++j)
      if (g[j]) out[i + j] = F.add(out[i + j], F.mul(f[i], g[j]));
  }
  return out;
}

Poly ProfileRing::inverse(const Poly& f) const {
  const auto& F = L();
  if (f.empty() || !f[0]) throw std::domain_error("inverse of a non-unit power series");
  Poly g(alpha_, 0);
  g[0] = F.inv(f[0]);
  for (std::uint32_t n = 1; n < alpha_; ++n) {
    Elem s = 0;
    for (std::uint32_t k = 1; k <= n && k < f.size(); ++k) s = F.add(s, F.mul(f[k], g[n - k]));
    g[n] = F.neg(F.mul(s, g[0]));
  }
  return g;
}

bool ProfileRing::valid_at(std::uint32_t v, const Poly& f) const {
  for (std::uint32_t j = 0; v + j < alpha_ && j < f.size(); ++j)
    if (!profile_[v + j].contains(tower_.vec(f[j]))) return false;
  return true;
}

std::string ProfileRing::poly_name(const Poly& f) const {
  std::string out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!f[i]) continue;
    if (!out.empty()) out += " + ";
    std::string c = L().name(f[i]);
    if (i == 0) {
      out += c;
      continue;
    }
    const std::string x = i == 1 ? "X" : "X^" + std::to_string(i);
    if (c == "1")
      out += x;
    else if (c.find('+') != std::string::npos)
      out += "(" + c + ")" + x;
    else
      out += c + x;
  }
  return out.empty() ? "0" : out;
}

// -------------------------------------------------------------- ideals

HeadIdeal unit_ideal(const ProfileRing& ring) {
  Poly one(ring.conductor(), 0);
  one[0] = 1;
  return {0, closure(ring, {one})};
}

HeadIdeal ideal_generated(const ProfileRing& ring, const std::vector<Poly>& gens) {
  if (gens.empty()) throw std::invalid_argument("ideal needs a generator");
  std::size_t v = SIZE_MAX;
  for (const auto& g : gens) {
    const auto vg = valuation_of(g);
    if (vg == g.size()) throw std::invalid_argument("generators must be non-zero");
    Poly lead(g.begin() + vg, g.end());
    lead.resize(ring.conductor(), 0);
    if (!ring.valid_at(static_cast<std::uint32_t>(vg), lead))
      throw std::invalid_argument("generator " + ring.poly_name(g) + " is not in the ring");
    v = std::min(v, vg);
  }
  std::vector<Poly> heads;
  for (const auto& g : gens) {
    Poly h(g.begin() + v, g.end());
    h.resize(ring.conductor(), 0);
    heads.push_back(std::move(h));
  }
  return {static_cast<std::uint32_t>(v), closure(ring, heads)};
}

HeadIdeal maximal_ideal(const ProfileRing& ring) {
  std::vector<Poly> gens;
  const std::uint32_t a = ring.conductor();
  for (std::uint32_t i = 1; i <= a; ++i)
    for (const auto& b : ring.coefficient_space(i).rows()) {
      Poly f(i + 1, 0);
      f[i] = ring.tower().elem(b);
      gens.push_back(f);
    }
  return ideal_generated(ring, gens);
}

HeadIdeal mul(const ProfileRing& ring, const HeadIdeal& a, const HeadIdeal& b) {
  FpSpan h(ring.L().characteristic(), ring.head_dim());
  const auto pa = rows_as_polys(ring, a.head);
  const auto pb = rows_as_polys(ring, b.head);
  for (const auto& x : pa)
    for (const auto& y : pb) h.insert(ring.head_vec(ring.mul(x, y, ring.conductor())));
  return {a.v + b.v, std::move(h)};
}

HeadIdeal add(const ProfileRing& ring, const HeadIdeal& a, const HeadIdeal& b) {
  const HeadIdeal& lo = a.v <= b.v ? a : b;
  const HeadIdeal& hi = a.v <= b.v ? b : a;
  HeadIdeal out = lo;
  for (const auto& row : hi.head.rows())
    out.head.insert(ring.head_vec(shift(ring.head_poly(row), hi.v - lo.v, ring.conductor())));
  return out;
}

HeadIdeal power(const ProfileRing& ring, const HeadIdeal& a, std::uint32_t n) {
  HeadIdeal out = unit_ideal(ring);
  for (std::uint32_t i = 0; i < n; ++i) out = mul(ring, out, a);
  return out;
}

bool is_subset(const ProfileRing& ring, const HeadIdeal& inner, const HeadIdeal& outer) {
  if (inner.v < outer.v) return false;
  for (const auto& row : inner.head.rows())
    if (!outer.head.contains(ring.head_vec(shift(ring.head_poly(row), inner.v - outer.v, ring.conductor()))))
      return false;
  return true;
}

std::uint32_t width(const ProfileRing& ring, const HeadIdeal& ideal) {
  return static_cast<std::uint32_t>(ideal.head.rank() / ring.tower().k());
}

bool is_principal(const ProfileRing& ring, const HeadIdeal& ideal) {
  for (const auto& x : ideal.head.elements()) {
    const Poly f = ring.head_poly(x);
    if (f[0] && closure(ring, {f}) == ideal.head) return true;
  }
  return false;
}

std::string describe(const ProfileRing& ring, const HeadIdeal& ideal) {
  if (ideal.v == 0) return "R";
  FpSpan acc(ring.L().characteristic(), ring.head_dim());
  std::vector<std::string> gens;
  auto take = [&](const Poly& h) {
    FpSpan next = acc;
    for (const auto& r : ring.residue_basis()) next.insert(ring.head_vec(ring.mul(r, h, ring.conductor())));
    if (next.rank() == acc.rank()) return;
    acc = std::move(next);
    gens.push_back(ring.poly_name(shift(h, ideal.v, ideal.v + ring.conductor())));
  };
  for (const auto& row : ideal.head.rows()) take(ring.head_poly(row));
  std::string out = "<";
  for (std::size_t i = 0; i < gens.size(); ++i) out += (i ? ", " : "") + gens[i];
  return out + ">";
}

// ------------------------------------------------------ element backend

ElementBackend::ElementBackend(ProfileRing ring) : ring_(std::move(ring)) {
  const std::uint32_t top = 2 * ring_.conductor() - 1;
  for (std::uint32_t v = 1; v <= top; ++v) {
    for (const auto& x : classes_of_valuation(v)) {
      bool split = false;
      for (AtomIndex i = 0; i < atoms_.size() && !split; ++i)
        if (atoms_[i].v < v && !quotients(x, i).empty()) split = true;
      if (!split) atoms_.push_back(x);
    }
  }
}

PowerClass ElementBackend::make(std::uint32_t v, const Poly& unit) const {
  Poly u = unit;
  u.resize(ring_.conductor(), 0);
  if (!u[0]) throw std::invalid_argument("unit part must have a non-zero constant term");
  return canonical({v, u});
}

bool ElementBackend::contains(const PowerClass& x) const { return ring_.valid_at(x.v, x.unit); }

std::vector<PowerClass> ElementBackend::classes_of_valuation(std::uint32_t v) const {
  std::vector<PowerClass> out;
  for (const auto& u : ring_.unit_representatives())
    if (ring_.valid_at(v, u)) out.push_back({v, u});
  return out;
}

std::string ElementBackend::name() const { return "elements of " + ring_.to_string(); }

PowerClass ElementBackend::canonical(const PowerClass& x) const {
  if (x.v == 0) {
    Poly one(ring_.conductor(), 0);
    one[0] = 1;
    return {0, one};
  }
  Poly best = x.unit;
  for (const auto& eps : ring_.residue_units()) best = std::min(best, ring_.mul(x.unit, eps, ring_.conductor()));
  return {x.v, best};
}

std::string ElementBackend::describe(const PowerClass& x) const {
  if (x.v == 0) return "1";
  return ring_.poly_name(shift(x.unit, x.v, x.v + ring_.conductor()));
}

std::vector<AtomIndex> ElementBackend::atoms_within(std::uint64_t bound) const {
  std::vector<AtomIndex> out;
  for (AtomIndex i = 0; i < atoms_.size(); ++i)
    if (atoms_[i].v <= bound) out.push_back(i);
  return out;
}

std::vector<AtomIndex> ElementBackend::atom_candidates(const PowerClass& x) const { return atoms_within(x.v); }

std::vector<PowerClass> ElementBackend::quotients(const PowerClass& x, AtomIndex i) const {
  const PowerClass& a = atoms_[i];
  if (a.v > x.v) return {};
  if (a.v == x.v) return a == x ? std::vector<PowerClass>{canonical({0, {}})} : std::vector<PowerClass>{};
  const std::uint32_t w = x.v - a.v;
  const Poly ainv = ring_.inverse(a.unit);
  const Poly base = ring_.mul(x.unit, ainv, ring_.conductor());
  for (const auto& eps : ring_.residue_units()) {
    const Poly u = ring_.mul(base, eps, ring_.conductor());
    if (ring_.valid_at(w, u)) return {canonical({w, u})};
  }
  return {};
}

PowerClass ElementBackend::multiply(const PowerClass& a, const PowerClass& b) const {
  if (a.v == 0) return canonical(b);
  if (b.v == 0) return canonical(a);
  return canonical({a.v + b.v, ring_.mul(a.unit, b.unit, ring_.conductor())});
}

std::vector<PowerClass> ElementBackend::element_sweep(std::uint64_t bound) const {
  std::vector<PowerClass> out;
  for (std::uint32_t v = 1; v <= bound; ++v) {
    auto level = classes_of_valuation(v);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::optional<bool> ElementBackend::exact_half_factorial() const {
  return std::all_of(atoms_.begin(), atoms_.end(), [](const PowerClass& a) { return a.v == 1; });
}

HalfFactorialVerdict is_half_factorial_rank1(const ElementBackend& backend) {
  HalfFactorialVerdict out;
  out.half_factorial = true;
  for (const auto& a : backend.atoms()) {
    if (a.v != 1) {
      out.half_factorial = false;
      out.witness = a;
      out.witness_text = backend.describe(a);
      break;
    }
  }
  return out;
}

// -------------------------------------------------------- ideal backend

IdealBackend::IdealBackend(ProfileRing ring, Options options) : ring_(std::move(ring)), options_(options) {}

std::string IdealBackend::name() const {
  std::string out = options_.principal_only ? "principal ideals of " : "ideals of ";
  out += ring_.to_string();
  if (!options_.principal_only) out += " (width <= " + std::to_string(options_.max_width) + ")";
  return out;
}

bool IdealBackend::in_window(const HeadIdeal& x) const {
  if (x.v == 0) return true;
  if (options_.principal_only) return is_principal(ring_, x);
  return width(ring_, x) <= options_.max_width;
}

const std::vector<HeadIdeal>& IdealBackend::window_of_valuation(std::uint32_t v) {
  if (auto it = window_.find(v); it != window_.end()) return it->second;
  std::set<HeadIdeal> seen;
  std::deque<HeadIdeal> queue;
  if (v > 0 && ring_.has_valuation(v)) {
    for (const auto& u : ring_.unit_representatives()) {
      if (!ring_.valid_at(v, u)) continue;
      HeadIdeal x{v, closure(ring_, {u})};
      if (width(ring_, x) <= options_.max_width || options_.principal_only)
        if (seen.insert(x).second) queue.push_back(x);
    }
    if (!options_.principal_only) {
      // Every head polynomial allowed at valuation v.
      std::vector<Poly> heads;
      const auto& L = ring_.L();
      std::uint64_t total = 1;
      for (std::uint32_t i = 0; i < ring_.conductor(); ++i) total *= L.size();
      for (std::uint64_t code = 1; code < total; ++code) {
        Poly h(ring_.conductor());
        std::uint64_t c = code;
        for (auto& x : h) {
          x = static_cast<Elem>(c % L.size());
          c /= L.size();
        }
        if (ring_.valid_at(v, h)) heads.push_back(std::move(h));
      }
      while (!queue.empty()) {
        const HeadIdeal cur = queue.front();
        queue.pop_front();
        for (const auto& h : heads) {
          if (cur.head.contains(ring_.head_vec(h))) continue;
          HeadIdeal next = cur;
          for (const auto& r : ring_.residue_basis())
            next.head.insert(ring_.head_vec(ring_.mul(r, h, ring_.conductor())));
          if (width(ring_, next) > options_.max_width) continue;
          if (seen.insert(next).second) queue.push_back(std::move(next));
        }
      }
    }
  }
  return window_.emplace(v, std::vector<HeadIdeal>(seen.begin(), seen.end())).first->second;
}

std::vector<HeadIdeal> IdealBackend::cofactors(const HeadIdeal& x, const HeadIdeal& a) {
  std::vector<HeadIdeal> out;
  if (a.v == 0 || a.v >= x.v) return out;
  const std::uint32_t w = x.v - a.v;
  if (!ring_.has_valuation(w)) return out;
  const FpSpan c = scale(ring_, x.head, ring_.inverse(unit_of(ring_, a.head)));
  for (const auto& s : closed_subspaces(c)) {
    if (!span_valid_at(ring_, w, s)) continue;
    HeadIdeal b{w, s};
    if (options_.principal_only && !is_principal(ring_, b)) continue;
    if (mul(ring_, a, b) == x) out.push_back(std::move(b));
  }
  return out;
}

const std::vector<FpSpan>& IdealBackend::closed_subspaces(const FpSpan& c) {
  if (auto it = subspace_cache_.find(c); it != subspace_cache_.end()) return it->second;
  return subspace_cache_.emplace(c, closed_unit_subspaces(ring_, c)).first->second;
}

std::set<HeadIdeal> IdealBackend::divisor_candidates(const HeadIdeal& x) {
  if (auto it = divisor_cache_.find(x); it != divisor_cache_.end()) return it->second;
  std::set<HeadIdeal> found;
  std::set<FpSpan> tried;
  // If AB = x and b is a unit of B's head, then b * H_A lies in H_x.
  for (const auto& b : ring_.unit_representatives()) {
    const FpSpan c = scale(ring_, x.head, ring_.inverse(b));
    if (!tried.insert(c).second) continue;
    for (const auto& s : closed_subspaces(c)) {
      for (std::uint32_t va = 1; va < x.v; ++va) {
        if (!ring_.has_valuation(va) || !span_valid_at(ring_, va, s)) continue;
        HeadIdeal a{va, s};
        if (found.count(a)) continue;
        if (options_.principal_only && !is_principal(ring_, a)) continue;
        if (!cofactors(x, a).empty()) found.insert(std::move(a));
      }
    }
  }
  if (divisor_cache_.size() > 500000) divisor_cache_.clear();
  return divisor_cache_.emplace(x, std::move(found)).first->second;
}

bool IdealBackend::is_atom(const HeadIdeal& x) {
  if (x.v == 0) return false;
  if (auto it = atom_cache_.find(x); it != atom_cache_.end()) return it->second;
  const bool atom = divisor_candidates(x).empty();
  atom_cache_.emplace(x, atom);
  return atom;
}

std::vector<std::pair<HeadIdeal, HeadIdeal>> IdealBackend::factor_pairs(const HeadIdeal& x) {
  std::vector<std::pair<HeadIdeal, HeadIdeal>> out;
  for (const auto& a : divisor_candidates(x))
    for (auto& b : cofactors(x, a))
      if (a <= b) out.emplace_back(a, std::move(b));
  return out;
}

AtomIndex IdealBackend::index_of(const HeadIdeal& atom) {
  if (auto it = atom_index_.find(atom); it != atom_index_.end()) return it->second;
  const auto i = static_cast<AtomIndex>(atoms_.size());
  atoms_.push_back(atom);
  atom_index_.emplace(atom, i);
  return i;
}

std::vector<AtomIndex> IdealBackend::atoms_within(std::uint64_t bound) {
  const std::uint32_t top = static_cast<std::uint32_t>(std::min<std::uint64_t>(bound, 2 * ring_.conductor() - 1));
  std::vector<AtomIndex> out;
  for (std::uint32_t v = 1; v <= top; ++v)
    for (const auto& x : window_of_valuation(v))
      if (is_atom(x)) out.push_back(index_of(x));
  return out;
}

std::vector<AtomIndex> IdealBackend::atom_candidates(const HeadIdeal& x) {
  std::vector<AtomIndex> out;
  if (is_atom(x)) out.push_back(index_of(x));
  for (const auto& a : divisor_candidates(x))
    if (is_atom(a)) out.push_back(index_of(a));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<HeadIdeal> IdealBackend::quotients(const HeadIdeal& x, AtomIndex i) {
  const HeadIdeal a = atoms_[i];
  if (a == x) return {unit_ideal(ring_)};
  return cofactors(x, a);
}

std::vector<HeadIdeal> IdealBackend::element_sweep(std::uint64_t bound) {
  std::vector<HeadIdeal> out;
  for (std::uint32_t v = 1; v <= bound; ++v) {
    const auto& level = window_of_valuation(v);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

// -------------------------------------------------------- finite quotient

TruncatedRing::TruncatedRing(ProfileRing ring, std::uint32_t n) : ring_(std::move(ring)), n_(n) {
  if (n < 1) throw std::invalid_argument("truncation must be positive");
  for (std::uint32_t i = 0; i < n_; ++i)
    for (const auto& b : ring_.coefficient_space(i).rows()) {
      Poly f(n_, 0);
      f[i] = ring_.tower().elem(b);
      basis_.push_back(f);
    }
}

std::uint64_t TruncatedRing::size() const {
  std::uint64_t s = 1;
  for (std::size_t i = 0; i < basis_.size(); ++i) s *= ring_.L().characteristic();
  return s;
}

Vec TruncatedRing::vec(const Poly& f) const {
  Vec out;
  out.reserve(dim());
  for (std::uint32_t i = 0; i < n_; ++i) {
    const auto d = ring_.L().digits(i < f.size() ? f[i] : 0);
    out.insert(out.end(), d.begin(), d.end());
  }
  return out;
}

Poly TruncatedRing::poly(const Vec& v) const {
  Poly out(n_);
  const auto e = ring_.L().degree();
  for (std::uint32_t i = 0; i < n_; ++i) out[i] = ring_.L().from_digits(Vec(v.begin() + i * e, v.begin() + (i + 1) * e));
  return out;
}

std::vector<Poly> TruncatedRing::elements() const {
  if (basis_.size() > 20 && ring_.L().characteristic() == 2) throw std::invalid_argument("quotient ring too large");
  FpSpan all(ring_.L().characteristic(), dim());
  for (const auto& b : basis_) all.insert(vec(b));
  if (size() > (1u << 20)) throw std::invalid_argument("quotient ring too large");
  std::vector<Poly> out;
  for (const auto& v : all.elements()) out.push_back(poly(v));
  std::sort(out.begin(), out.end());
  return out;
}

FpSpan TruncatedRing::whole() const {
  FpSpan s = zero();
  for (const auto& b : basis_) s.insert(vec(b));
  return s;
}

FpSpan TruncatedRing::ideal(const std::vector<Poly>& gens) const {
  FpSpan s = zero();
  for (const auto& g : gens)
    for (const auto& r : basis_) s.insert(vec(ring_.mul(r, g, n_)));
  return s;
}

FpSpan TruncatedRing::product(const FpSpan& a, const FpSpan& b) const {
  FpSpan s = zero();
  for (const auto& x : a.rows()) {
    const Poly f = poly(x);
    for (const auto& y : b.rows()) s.insert(vec(ring_.mul(f, poly(y), n_)));
  }
  return s;
}

FpSpan TruncatedRing::sum(const FpSpan& a, const FpSpan& b) const {
  FpSpan s = a;
  for (const auto& y : b.rows()) s.insert(y);
  return s;
}

FpSpan TruncatedRing::maximal() const {
  std::vector<Poly> gens;
  for (const auto& b : basis_)
    if (!b[0]) gens.push_back(b);
  return ideal(gens);
}

FpSpan TruncatedRing::image(const HeadIdeal& x) const {
  std::vector<Poly> gens;
  for (const auto& row : x.head.rows()) gens.push_back(shift(ring_.head_poly(row), x.v, n_));
  for (std::uint32_t i = x.v + ring_.conductor(); i < n_; ++i)
    for (Elem a = 1; a < ring_.L().size(); a *= ring_.L().characteristic()) {
      Poly f(n_, 0);
      f[i] = a;
      gens.push_back(f);
    }
  return ideal(gens);
}

std::vector<FpSpan> TruncatedRing::enumerate_ideals(std::size_t element_cap) const {
  if (size() > element_cap) throw std::invalid_argument("quotient ring exceeds the element cap");
  std::vector<FpSpan> principal;
  {
    std::set<FpSpan> uniq;
    for (const auto& x : elements()) uniq.insert(ideal({x}));
    principal.assign(uniq.begin(), uniq.end());
  }
  std::set<FpSpan> seen{zero()};
  std::deque<FpSpan> queue{zero()};
  while (!queue.empty()) {
    const FpSpan cur = queue.front();
    queue.pop_front();
    for (const auto& p : principal) {
      if (cur.contains(p)) continue;
      FpSpan next = sum(cur, p);
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  std::vector<FpSpan> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), [](const FpSpan& a, const FpSpan& b) {
    if (a.rank() != b.rank()) return a.rank() < b.rank();
    return a < b;
  });
  return out;
}

std::string TruncatedRing::describe(const FpSpan& x) const {
  FpSpan acc = zero();
  std::vector<std::string> gens;
  for (const auto& row : x.rows()) {
    const Poly f = poly(row);
    FpSpan next = sum(acc, ideal({f}));
    if (next.rank() == acc.rank()) continue;
    acc = std::move(next);
    gens.push_back(ring_.poly_name(f));
  }
  std::string out = "<";
  for (std::size_t i = 0; i < gens.size(); ++i) out += (i ? ", " : "") + gens[i];
  return out + ">";
}

// ------------------------------------------------------------ verifiers

AtomCheck ideal_monoid_atom_check(const TruncatedRing& quotient, const FpSpan& target) {
  if (target == quotient.whole()) throw std::invalid_argument("atom check needs a proper ideal");
  AtomCheck out;
  auto ideals = quotient.enumerate_ideals();
  const FpSpan whole = quotient.whole();
  ideals.erase(std::remove(ideals.begin(), ideals.end(), whole), ideals.end());
  out.ideals_scanned = ideals.size();
  out.atom = true;
  for (std::size_t i = 0; i < ideals.size() && out.atom; ++i) {
    if (!ideals[i].contains(target)) continue;
    for (std::size_t j = i; j < ideals.size(); ++j) {
      if (!ideals[j].contains(target)) continue;
      ++out.pairs_scanned;
      if (quotient.product(ideals[i], ideals[j]) == target) {
        out.atom = false;
        out.witness = std::make_pair(ideals[i], ideals[j]);
        break;
      }
    }
  }
  return out;
}

SubspaceScan subspace_product_scan(const FieldTower& tower, const FpSpan& v, const FpSpan& target) {
  SubspaceScan out;
  const auto subs = tower.k_subspaces(v);
  out.subspaces = subs.size();
  for (const auto& a : subs)
    for (const auto& b : subs) {
      ++out.pairs;
      if (!out.realized && tower.product_span(a, b) == target) {
        out.realized = true;
        out.witness = std::make_pair(a, b);
      }
    }
  return out;
}

TwoGeneratedCheck two_generated_dual_check(const FieldTower& tower) {
  TwoGeneratedCheck out;
  out.relative_degree = tower.relative_degree();
  const auto& L = tower.L();
  if (L.size() > 4096) {
    out.two_generated = out.relative_degree <= 2;
    return out;
  }
  for (Elem a = 0; a < L.size() && !out.two_generated; ++a)
    for (Elem b = a; b < L.size(); ++b)
      if (tower.k_span({a, b}).rank() == L.degree()) {
        out.two_generated = true;
        out.generators = std::make_pair(a, b);
        break;
      }
  return out;
}

IdealHalfFactorialVerdict ideal_monoid_half_factorial(IdealBackend& backend, std::uint64_t valuation_bound) {
  IdealHalfFactorialVerdict out;
  const auto& ring = backend.ring();
  ElementBackend elements(ring);
  out.element_half_factorial = is_half_factorial_rank1(elements).half_factorial;
  if (!out.element_half_factorial) {
    out.reason = "element monoid is not half-factorial";
    return out;
  }
  const HeadIdeal m2 = power(ring, maximal_ideal(ring), 2);
  for (AtomIndex i : backend.atoms_within(valuation_bound)) {
    const HeadIdeal a = backend.atom(i);
    if (is_subset(ring, a, m2) && !is_principal(ring, a)) {
      out.witness = a;
      out.reason = "nonprincipal atom " + describe(ring, a) + " lies in m^2";
      return out;
    }
  }
  out.half_factorial = true;
  out.reason = "element monoid half-factorial and no nonprincipal atom in m^2";
  return out;
}

PrincipalContainment m_squared_in_principal(const ProfileRing& ring) {
  PrincipalContainment out;
  const HeadIdeal m2 = power(ring, maximal_ideal(ring), 2);
  for (std::uint32_t v = 1; v <= 2 * ring.conductor(); ++v) {
    if (!ring.has_valuation(v)) continue;
    for (const auto& u : ring.unit_representatives()) {
      if (!ring.valid_at(v, u)) continue;
      HeadIdeal p{v, closure(ring, {u})};
      if (is_subset(ring, m2, p)) {
        out.contained = true;
        out.witness = p;
        return out;
      }
    }
  }
  return out;
}

NonHalfFactorialIdealReport verify_nonhalffactorial_ideal_example() {
  NonHalfFactorialIdealReport out;
  FieldTower tower(FiniteField::parse(2, "y4=y+1"), 1);
  const auto& L = tower.L();
  const Elem y = L.generator_y();
  const Elem y2 = L.mul(y, y);
  const Elem y3 = L.mul(y2, y);
  const FpSpan V = tower.k_span({1, y, y2});
  const ProfileRing ring = ProfileRing::make(tower, {tower.k_span({1}), V});
  out.ring = ring.to_string();

  const HeadIdeal ideal = ideal_generated(ring, {{0, 0, y}, {0, 0, L.add(1, y3)}});
  out.ideal = describe(ring, ideal);
  const HeadIdeal m = maximal_ideal(ring);
  out.ideal_in_m2 = is_subset(ring, ideal, power(ring, m, 2));
  out.m3_in_ideal = is_subset(ring, power(ring, m, 3), ideal);

  FpSpan t(L.characteristic(), L.degree());
  for (const auto& row : ideal.head.rows()) t.insert(Vec(row.begin(), row.begin() + L.degree()));
  out.target = tower.members(t);

  const TruncatedRing quotient(ring, 3);
  const FpSpan image = quotient.image(ideal);
  out.quotient_ideals = quotient.enumerate_ideals().size();
  bool principal_in_quotient = false;
  for (const auto& x : quotient.elements())
    if (quotient.ideal({x}) == image) principal_in_quotient = true;
  out.nonprincipal = !principal_in_quotient && !is_principal(ring, ideal);
  out.atom = ideal_monoid_atom_check(quotient, image);
  IdealBackend ideals(ring, {.max_width = 8, .principal_only = false});
  out.atom_by_divisor_search = ideals.is_atom(ideal);

  out.scan = subspace_product_scan(tower, V, t);
  const auto v_members = tower.members(V);
  for (Elem a : v_members) {
    if (!a) continue;
    ScaledCase c;
    c.a = a;
    c.multiplier = L.inv(a);
    for (Elem w : out.target) c.w.push_back(L.mul(c.multiplier, w));
    c.inside_v = std::all_of(c.w.begin(), c.w.end(), [&](Elem w) { return V.contains(tower.vec(w)); });
    out.cases.push_back(std::move(c));
  }
  std::set<Elem> products;
  for (Elem a : v_members)
    for (Elem b : v_members) products.insert(L.mul(a, b));
  out.products_cover_l = products.size() == L.size();

  ElementBackend elements(ring);
  out.element_half_factorial = is_half_factorial_rank1(elements).half_factorial;
  out.ideal_half_factorial =
      out.element_half_factorial && !(out.atom.atom && out.ideal_in_m2 && out.nonprincipal);
  IdealBackend principal(ring, {.max_width = 1, .principal_only = true});
  SweepOptions sweep;
  sweep.monotone = false;
  out.invertible_half_factorial = sweep_invariants(principal, 2 * ring.conductor() + 1, sweep).half_factorial;

  // (m : m) in the quotient: constant terms f_0 with f_0 V inside V.
  std::vector<Elem> stabilizer;
  for (Elem a = 0; a < L.size(); ++a) {
    bool ok = true;
    for (Elem b : v_members) ok = ok && V.contains(tower.vec(L.mul(a, b)));
    if (ok) stabilizer.push_back(a);
  }
  const TruncatedRing q(ring, 3);
  FpSpan expected = q.zero();
  expected.insert(q.vec({1, 0, 0}));
  for (std::uint32_t i = 1; i < 3; ++i)
    for (Elem a = 1; a < L.size(); a <<= 1) {
      Poly f(3, 0);
      f[i] = a;
      expected.insert(q.vec(f));
    }
  const FpSpan generated = q.ideal({{1, 0, 0}, {0, y3, 0}});
  out.multiplier_identity = stabilizer == tower.K() && generated == expected;

  out.pass = out.ideal_in_m2 && out.m3_in_ideal && out.nonprincipal && out.atom.atom && out.atom_by_divisor_search &&
             !out.scan.realized && out.scan.subspaces == 16 && out.scan.pairs == 256 && out.cases.size() == 7 &&
             std::none_of(out.cases.begin(), out.cases.end(), [](const ScaledCase& c) { return c.inside_v; }) &&
             out.products_cover_l && out.element_half_factorial && !out.ideal_half_factorial &&
             out.invertible_half_factorial && out.multiplier_identity;
  return out;
}

GapRingReport verify_gap_ring(const FieldTower& tower, std::uint32_t n, std::uint32_t window_width) {
  GapRingReport out;
  const ProfileRing ring = ProfileRing::gap(tower, n);
  out.ring = ring.to_string();
  out.n = n;
  out.window_width = window_width;
  out.valuation_bound = 4 * n - 2;

  ElementBackend elements(ring);
  out.element = is_half_factorial_rank1(elements);
  out.containment = m_squared_in_principal(ring);

  SweepOptions sweep;
  sweep.catenary = false;
  sweep.monotone = false;
  IdealBackend ideals(ring, {.max_width = window_width, .principal_only = false});
  out.ideals = sweep_invariants(ideals, out.valuation_bound, sweep);
  IdealBackend principal(ring, {.max_width = 1, .principal_only = true});
  out.principal = sweep_invariants(principal, out.valuation_bound, sweep);

  auto equality = [](const InvariantReport& r) {
    return !r.delta_set.empty() && r.daleth == 2 + r.delta_set.back();
  };
  out.ideal_daleth_equality = equality(out.ideals);
  out.principal_daleth_equality = equality(out.principal);

  Poly xn(n + 1, 0);
  xn[n] = 1;
  const HeadIdeal u = ideal_generated(ring, {xn});
  out.decomposition_holds = true;
  for (const auto& x : ideals.element_sweep(out.valuation_bound)) {
    HeadIdeal j = x;
    while (!ideals.is_atom(j)) {
      std::vector<HeadIdeal> rest;
      for (const auto& [a, b] : ideals.factor_pairs(j)) {
        if (a == u) rest.push_back(b);
        else if (b == u) rest.push_back(a);
      }
      if (rest.size() != 1) {
        out.decomposition_holds = false;
        break;
      }
      j = rest.front();
    }
    if (!out.decomposition_holds) break;
    ++out.decomposed;
  }

  out.pass = !out.element.half_factorial && out.containment.contained && out.ideal_daleth_equality &&
             out.principal_daleth_equality && out.decomposition_holds;
  return out;
}

}  // namespace factorsmith::fprimary
