#include "factorsmith/numonoid.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace factorsmith::numonoid {

NumericalMonoid NumericalMonoid::make(std::vector<std::int64_t> generators) {
  if (generators.empty()) throw std::invalid_argument("numerical monoid needs at least one generator");
  for (auto g : generators) {
    if (g <= 0) throw std::invalid_argument("generators must be positive, got " + std::to_string(g));
  }
  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());

  std::int64_t g = 0;
  for (auto x : generators) g = std::gcd(g, x);
  if (g != 1) throw std::invalid_argument("generators have gcd " + std::to_string(g) + ", expected 1");

  // Drop generators representable by smaller ones.
  const std::int64_t top = generators.back();
  std::vector<char> reachable(static_cast<std::size_t>(top) + 1, 0);
  reachable[0] = 1;
  std::vector<std::int64_t> minimal;
  for (auto x : generators) {
    if (reachable[x]) continue;
    minimal.push_back(x);
    for (std::int64_t n = x; n <= top; ++n) {
      if (reachable[n - x]) reachable[n] = 1;
    }
  }

  NumericalMonoid m;
  m.generators_ = std::move(minimal);

  // Apéry set w.r.t. the multiplicity: shortest path over residues.
  const std::int64_t mult = m.generators_.front();
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
  std::vector<std::int64_t> dist(static_cast<std::size_t>(mult), kInf);
  using Item = std::pair<std::int64_t, std::int64_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[0] = 0;
  queue.emplace(0, 0);
  while (!queue.empty()) {
    auto [d, r] = queue.top();
    queue.pop();
    if (d != dist[r]) continue;
    for (auto gen : m.generators_) {
      const std::int64_t nd = d + gen;
      const std::int64_t nr = nd % mult;
      if (nd < dist[nr]) {
        dist[nr] = nd;
        queue.emplace(nd, nr);
      }
    }
  }
  m.apery_ = std::move(dist);
  m.frobenius_ = *std::max_element(m.apery_.begin(), m.apery_.end()) - mult;
  return m;
}

bool NumericalMonoid::contains(std::int64_t n) const {
  if (n < 0) return false;
  return n >= apery_[static_cast<std::size_t>(n % generators_.front())];
}

std::string NumericalMonoid::to_string() const {
  std::ostringstream os;
  os << '<';
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (i) os << ',';
    os << generators_[i];
  }
  os << '>';
  return os.str();
}

NumericalMonoid parse(const std::string& text) {
  std::vector<std::int64_t> gens;
  std::string token;
  std::istringstream is(text);
  while (std::getline(is, token, ',')) {
    token.erase(std::remove_if(token.begin(), token.end(), ::isspace), token.end());
    if (token.empty()) continue;
    std::size_t used = 0;
    long long value = 0;
    try {
      value = std::stoll(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != token.size()) throw std::invalid_argument("bad generator '" + token + "'");
    gens.push_back(value);
  }
  return NumericalMonoid::make(std::move(gens));
}

std::int64_t min_delta_gcd(const NumericalMonoid& monoid) {
  const auto gens = monoid.generators();
  if (gens.size() < 2) throw std::invalid_argument("min delta is undefined for the factorial monoid N0");
  std::int64_t g = 0;
  for (std::size_t i = 1; i < gens.size(); ++i) g = std::gcd(g, gens[i] - gens[i - 1]);
  return g;
}

std::vector<AtomIndex> Backend::atoms_within(std::uint64_t) const {
  std::vector<AtomIndex> out(monoid_.generators().size());
  std::iota(out.begin(), out.end(), 0);
  return out;
}

std::vector<AtomIndex> Backend::atom_candidates(std::int64_t x) const {
  std::vector<AtomIndex> out;
  const auto gens = monoid_.generators();
  for (AtomIndex i = 0; i < gens.size() && gens[i] <= x; ++i) out.push_back(i);
  return out;
}

std::vector<std::int64_t> Backend::quotients(std::int64_t x, AtomIndex i) const {
  const std::int64_t rest = x - monoid_.generators()[i];
  if (monoid_.contains(rest)) return {rest};
  return {};
}

std::vector<std::int64_t> Backend::element_sweep(std::uint64_t bound) const {
  std::vector<std::int64_t> out;
  for (std::int64_t n = 1; n <= static_cast<std::int64_t>(bound); ++n) {
    if (monoid_.contains(n)) out.push_back(n);
  }
  return out;
}

std::uint64_t completeness_bound(const NumericalMonoid& monoid) {
  const std::int64_t b = 4 * (monoid.frobenius() + monoid.generators().back());
  return static_cast<std::uint64_t>(std::max<std::int64_t>(b, 1));
}

}  // namespace factorsmith::numonoid
