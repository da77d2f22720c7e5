#include "factorsmith/zerosum.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "factorsmith/engine.hpp"

namespace factorsmith::zerosum {

FiniteAbelianGroup FiniteAbelianGroup::make(const std::vector<std::uint32_t>& cyclic_orders) {
  // prime -> exponents of that prime across the cyclic factors
  std::map<std::uint32_t, std::vector<std::uint32_t>> powers;
  for (std::uint32_t n : cyclic_orders) {
    if (n < 1) throw std::invalid_argument("cyclic orders must be positive");
    for (std::uint32_t p = 2; n > 1; ++p) {
      if (p * p > n) p = n;
      std::uint32_t q = 1;
      while (n % p == 0) {
        n /= p;
        q *= p;
      }
      if (q > 1) powers[p].push_back(q);
    }
  }
  std::size_t rank = 0;
  for (auto& [p, qs] : powers) {
    std::sort(qs.rbegin(), qs.rend());
    rank = std::max(rank, qs.size());
  }
  FiniteAbelianGroup g;
  g.factors_.assign(rank, 1);
  for (const auto& [p, qs] : powers)
    for (std::size_t i = 0; i < qs.size(); ++i) g.factors_[i] *= qs[i];
  std::reverse(g.factors_.begin(), g.factors_.end());
  for (auto n : g.factors_) {
    if (g.order_ > (1u << 20) / n) throw std::invalid_argument("group order too large");
    g.order_ *= n;
  }
  return g;
}

std::vector<std::uint32_t> FiniteAbelianGroup::coordinates(std::uint32_t a) const {
  std::vector<std::uint32_t> out;
  for (auto n : factors_) {
    out.push_back(a % n);
    a /= n;
  }
  return out;
}

std::uint32_t FiniteAbelianGroup::add(std::uint32_t a, std::uint32_t b) const {
  std::uint32_t out = 0;
  std::uint32_t scale = 1;
  for (auto n : factors_) {
    out += ((a % n + b % n) % n) * scale;
    a /= n;
    b /= n;
    scale *= n;
  }
  return out;
}

std::uint32_t FiniteAbelianGroup::negate(std::uint32_t a) const {
  std::uint32_t out = 0;
  std::uint32_t scale = 1;
  for (auto n : factors_) {
    out += ((n - a % n) % n) * scale;
    a /= n;
    scale *= n;
  }
  return out;
}

std::string FiniteAbelianGroup::element_name(std::uint32_t a) const {
  const auto c = coordinates(a);
  if (c.size() == 1) return std::to_string(c[0]);
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << ')';
  return os.str();
}

std::string FiniteAbelianGroup::to_string() const {
  if (factors_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < factors_.size(); ++i) os << (i ? "+" : "") << "Z/" << factors_[i];
  return os.str();
}

FiniteAbelianGroup parse(const std::string& text) {
  std::vector<std::uint32_t> orders;
  std::string token;
  for (char ch : text + ",") {
    if (ch == 'x' || ch == 'X' || ch == ',' || ch == '+') {
      if (!token.empty()) {
        std::size_t used = 0;
        unsigned long v = 0;
        try {
          v = std::stoul(token, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used == 0 || used != token.size()) throw std::invalid_argument("bad group factor '" + token + "'");
        orders.push_back(static_cast<std::uint32_t>(v));
        token.clear();
      }
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      token += ch;
    }
  }
  if (orders.empty()) throw std::invalid_argument("empty group description");
  return FiniteAbelianGroup::make(orders);
}

std::uint32_t sequence_length(const Sequence& s) {
  std::uint32_t n = 0;
  for (auto c : s) n += c;
  return n;
}

namespace {

struct AtomSearch {
  const FiniteAbelianGroup& group;
  std::vector<std::uint32_t> current;
  std::vector<std::vector<std::uint32_t>> found;

  // sums[g] != 0 iff g is the sum of a non-empty subsequence of current
  void extend(std::uint32_t start, std::uint32_t total, const std::vector<char>& sums) {
    const std::uint32_t closing = group.negate(total);
    if (!current.empty() && closing != 0 && closing >= current.back()) {
      auto atom = current;
      atom.push_back(closing);
      found.push_back(std::move(atom));
    }
    for (std::uint32_t g = start; g < group.order(); ++g) {
      if (sums[group.negate(g)]) continue;  // g would close a zero-sum subsequence
      std::vector<char> next = sums;
      next[g] = 1;
      for (std::uint32_t h = 1; h < group.order(); ++h)
        if (sums[h]) next[group.add(h, g)] = 1;
      if (next[0]) continue;
      current.push_back(g);
      extend(g, group.add(total, g), next);
      current.pop_back();
    }
  }
};

}  // namespace

std::vector<Sequence> minimal_zero_sums(const FiniteAbelianGroup& group, std::uint32_t order_limit) {
  if (group.order() > order_limit) {
    throw std::invalid_argument("group order " + std::to_string(group.order()) + " exceeds limit " +
                                std::to_string(order_limit));
  }
  AtomSearch search{group, {}, {}};
  std::vector<char> sums(group.order(), 0);
  // Length-one atoms would be the identity, which is not a sequence element;
  // start from every non-zero element.
  search.extend(1, 0, sums);
  std::sort(search.found.begin(), search.found.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  std::vector<Sequence> out;
  for (const auto& codes : search.found) {
    Sequence s(group.order(), 0);
    for (auto g : codes) ++s[g];
    out.push_back(std::move(s));
  }
  return out;
}

std::uint32_t davenport_constant(const std::vector<Sequence>& atoms) {
  std::uint32_t d = 1;
  for (const auto& a : atoms) d = std::max(d, sequence_length(a));
  return d;
}

Backend::Backend(FiniteAbelianGroup group, std::uint32_t order_limit)
    : group_(std::move(group)), atoms_(minimal_zero_sums(group_, order_limit)), davenport_(davenport_constant(atoms_)) {}

std::string Backend::describe(const Sequence& x) const {
  if (is_unit(x)) return "1";
  std::ostringstream os;
  bool first = true;
  for (std::uint32_t g = 1; g < x.size(); ++g) {
    if (!x[g]) continue;
    if (!first) os << '*';
    first = false;
    os << 'g' << group_.element_name(g);
    if (x[g] > 1) os << '^' << static_cast<int>(x[g]);
  }
  return os.str();
}

std::vector<AtomIndex> Backend::atoms_within(std::uint64_t) const {
  std::vector<AtomIndex> out(atoms_.size());
  std::iota(out.begin(), out.end(), 0);
  return out;
}

std::vector<AtomIndex> Backend::atom_candidates(const Sequence& x) const {
  std::vector<AtomIndex> out;
  for (AtomIndex i = 0; i < atoms_.size(); ++i) {
    bool fits = true;
    for (std::size_t g = 1; g < x.size() && fits; ++g) fits = atoms_[i][g] <= x[g];
    if (fits) out.push_back(i);
  }
  return out;
}

std::vector<Sequence> Backend::quotients(const Sequence& x, AtomIndex i) const {
  Sequence rest = x;
  for (std::size_t g = 1; g < x.size(); ++g) {
    if (atoms_[i][g] > x[g]) return {};
    rest[g] -= atoms_[i][g];
  }
  return {rest};
}

Sequence Backend::multiply(const Sequence& a, const Sequence& b) const {
  Sequence out(a.size(), 0);
  for (std::size_t g = 0; g < a.size(); ++g) {
    const unsigned sum = a[g] + b[g];
    if (sum > 255) throw std::overflow_error("sequence multiplicity exceeds 255");
    out[g] = static_cast<std::uint8_t>(sum);
  }
  return out;
}

std::vector<Sequence> Backend::element_sweep(std::uint64_t bound) const {
  if (bound > 255) throw std::invalid_argument("zero-sum sweep length bound must be <= 255");
  std::vector<Sequence> out;
  Sequence current(group_.order(), 0);
  // Enumerate non-decreasing code sequences and keep the zero-sum ones.
  auto rec = [&](auto&& self, std::uint32_t start, std::uint32_t length, std::uint32_t total) -> void {
    if (length > 0 && total == 0) out.push_back(current);
    if (length == bound) return;
    for (std::uint32_t g = start; g < group_.order(); ++g) {
      ++current[g];
      self(self, g, length + 1, group_.add(total, g));
      --current[g];
    }
  };
  rec(rec, 1, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

Sequence Backend::from_elements(const std::vector<std::uint32_t>& codes) const {
  Sequence s(group_.order(), 0);
  for (auto g : codes) {
    if (g == 0 || g >= group_.order()) throw std::invalid_argument("sequence elements must be non-zero group elements");
    ++s[g];
  }
  return s;
}

CatenaryBoundCheck check_catenary_lower_bound(const FiniteAbelianGroup& group, std::optional<std::uint64_t> bound) {
  Backend backend(group);
  CatenaryBoundCheck out;
  out.sweep_bound = bound.value_or(3ull * backend.davenport());
  out.lower_bound = std::max(group.exponent(), 1 + group.rank());
  out.factorial = group.order() <= 2;
  SweepOptions options;
  options.monotone = false;
  options.daleth = false;
  out.catenary = sweep_invariants(backend, out.sweep_bound, options).catenary;
  out.pass = out.factorial || out.catenary >= out.lower_bound;
  return out;
}

}  // namespace factorsmith::zerosum
