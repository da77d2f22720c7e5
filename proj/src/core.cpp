#include "factorsmith/core.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

namespace factorsmith {

Factorization::Factorization(std::vector<Term> terms) : terms_(std::move(terms)) {
  std::sort(terms_.begin(), terms_.end());
  std::vector<Term> merged;
  for (const auto& [index, mult] : terms_) {
    if (mult == 0) continue;
    if (!merged.empty() && merged.back().first == index) {
      merged.back().second += mult;
    } else {
      merged.emplace_back(index, mult);
    }
  }
  terms_ = std::move(merged);
  for (const auto& t : terms_) length_ += t.second;
}

std::uint32_t Factorization::multiplicity(AtomIndex index) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), Term{index, 0});
  return (it != terms_.end() && it->first == index) ? it->second : 0;
}

Factorization Factorization::times(AtomIndex index) const {
  Factorization out;
  out.terms_.reserve(terms_.size() + 1);
  bool placed = false;
  for (const auto& t : terms_) {
    if (!placed && t.first >= index) {
      if (t.first == index) {
        out.terms_.emplace_back(index, t.second + 1);
        placed = true;
        continue;
      }
      out.terms_.emplace_back(index, 1);
      placed = true;
    }
    out.terms_.push_back(t);
  }
  if (!placed) out.terms_.emplace_back(index, 1);
  out.length_ = length_ + 1;
  return out;
}

std::string Factorization::to_string() const {
  if (terms_.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& [index, mult] : terms_) {
    if (!first) os << '*';
    first = false;
    os << 'u' << index;
    if (mult > 1) os << '^' << mult;
  }
  return os.str();
}

bool LengthSet::contains(Length l) const {
  return std::binary_search(values.begin(), values.end(), l);
}

std::string LengthSet::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) os << ',';
    os << values[i];
  }
  os << '}';
  return os.str();
}

Rational Rational::make(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  const std::uint64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const auto lhs = static_cast<unsigned __int128>(a.num) * b.den;
  const auto rhs = static_cast<unsigned __int128>(b.num) * a.den;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::to_string() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

LengthSet make_length_set(std::vector<Length> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return LengthSet{std::move(values)};
}

LengthSet sumset(const LengthSet& a, const LengthSet& b) {
  std::vector<Length> out;
  out.reserve(a.values.size() * b.values.size());
  for (Length x : a.values)
    for (Length y : b.values) out.push_back(x + y);
  return make_length_set(std::move(out));
}

std::vector<Length> delta_of(const LengthSet& lengths) {
  std::vector<Length> gaps;
  for (std::size_t i = 1; i < lengths.values.size(); ++i) {
    gaps.push_back(lengths.values[i] - lengths.values[i - 1]);
  }
  std::sort(gaps.begin(), gaps.end());
  gaps.erase(std::unique(gaps.begin(), gaps.end()), gaps.end());
  return gaps;
}

Rational rho_of(const LengthSet& lengths) {
  if (lengths.values.empty()) throw std::invalid_argument("elasticity of an empty length set");
  if (lengths.values.front() == 0) {
    if (lengths.values.size() != 1) throw std::invalid_argument("length set mixes 0 with positive lengths");
    return Rational::make(1, 1);
  }
  return Rational::make(lengths.values.back(), lengths.values.front());
}

std::vector<Length> merge_delta(const std::vector<Length>& a, const std::vector<Length>& b) {
  std::vector<Length> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Length distance(const Factorization& z, const Factorization& w) {
  const auto a = z.terms();
  const auto b = w.terms();
  Length left = 0;
  Length right = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      left += a[i++].second;
    } else if (i == a.size() || b[j].first < a[i].first) {
      right += b[j++].second;
    } else {
      if (a[i].second > b[j].second) left += a[i].second - b[j].second;
      else right += b[j].second - a[i].second;
      ++i;
      ++j;
    }
  }
  return std::max(left, right);
}

Length catenary_degree(std::span<const Factorization> factorizations) {
  const std::size_t n = factorizations.size();
  if (n <= 1) return 0;
  constexpr Length kInf = std::numeric_limits<Length>::max();
  std::vector<Length> best(n, kInf);
  std::vector<char> in_tree(n, 0);
  best[0] = 0;
  Length bottleneck = 0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t u = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!in_tree[v] && (u == n || best[v] < best[u])) u = v;
    }
    in_tree[u] = 1;
    bottleneck = std::max(bottleneck, best[u]);
    for (std::size_t v = 0; v < n; ++v) {
      if (!in_tree[v]) best[v] = std::min(best[v], distance(factorizations[u], factorizations[v]));
    }
  }
  return bottleneck;
}

Length monotone_catenary_degree(std::span<const Factorization> factorizations) {
  const std::size_t n = factorizations.size();
  if (n <= 1) return 0;
  std::vector<Length> dist(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      dist[i * n + j] = dist[j * n + i] = distance(factorizations[i], factorizations[j]);

  constexpr Length kInf = std::numeric_limits<Length>::max();
  Length worst = 0;
  std::vector<Length> best(n);
  std::vector<char> done(n);
  for (std::size_t s = 0; s < n; ++s) {
    const Length ls = factorizations[s].length();
    std::fill(best.begin(), best.end(), kInf);
    std::fill(done.begin(), done.end(), 0);
    best[s] = 0;
    // Bottleneck Dijkstra over arcs a -> b with |a| <= |b|.
    for (;;) {
      std::size_t u = n;
      for (std::size_t v = 0; v < n; ++v) {
        if (!done[v] && best[v] != kInf && (u == n || best[v] < best[u])) u = v;
      }
      if (u == n) break;
      done[u] = 1;
      const Length lu = factorizations[u].length();
      for (std::size_t v = 0; v < n; ++v) {
        if (done[v] || factorizations[v].length() < lu) continue;
        best[v] = std::min(best[v], std::max(best[u], dist[u * n + v]));
      }
    }
    for (std::size_t t = 0; t < n; ++t) {
      if (factorizations[t].length() < ls) continue;
      // The direct arc s -> t exists, so best[t] is finite here.
      worst = std::max(worst, best[t]);
    }
  }
  return worst;
}

}  // namespace factorsmith
