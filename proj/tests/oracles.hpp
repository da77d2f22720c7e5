#pragma once

// Brute-force reference computations used only by tests.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "factorsmith/core.hpp"

namespace oracle {

using factorsmith::Factorization;
using factorsmith::Length;

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

inline bool connected_at(const std::vector<Factorization>& zs, Length threshold) {
  UnionFind uf(zs.size());
  std::size_t components = zs.size();
  for (std::size_t i = 0; i < zs.size(); ++i)
    for (std::size_t j = i + 1; j < zs.size(); ++j)
      if (factorsmith::distance(zs[i], zs[j]) <= threshold && uf.unite(i, j)) --components;
  return components == 1;
}

/// Smallest N for which the <=N distance graph is connected, by binary
/// search over the sorted distinct pairwise distances.
inline Length threshold_catenary(const std::vector<Factorization>& zs) {
  if (zs.size() <= 1) return 0;
  std::vector<Length> ds;
  for (std::size_t i = 0; i < zs.size(); ++i)
    for (std::size_t j = i + 1; j < zs.size(); ++j) ds.push_back(factorsmith::distance(zs[i], zs[j]));
  std::sort(ds.begin(), ds.end());
  ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
  std::size_t lo = 0;
  std::size_t hi = ds.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (connected_at(zs, ds[mid])) hi = mid;
    else lo = mid + 1;
  }
  return ds[lo];
}

/// Smallest N such that every pair |s| <= |t| is joined by a chain of
/// steps <= N with non-decreasing lengths; plain reachability per N.
inline Length threshold_monotone_catenary(const std::vector<Factorization>& zs) {
  const std::size_t n = zs.size();
  if (n <= 1) return 0;
  std::vector<Length> ds{0};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) ds.push_back(factorsmith::distance(zs[i], zs[j]));
  std::sort(ds.begin(), ds.end());
  ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
  for (Length threshold : ds) {
    bool ok = true;
    for (std::size_t s = 0; s < n && ok; ++s) {
      std::vector<char> seen(n, 0);
      std::vector<std::size_t> stack{s};
      seen[s] = 1;
      while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t v = 0; v < n; ++v) {
          if (seen[v] || zs[v].length() < zs[u].length()) continue;
          if (factorsmith::distance(zs[u], zs[v]) > threshold) continue;
          seen[v] = 1;
          stack.push_back(v);
        }
      }
      for (std::size_t t = 0; t < n; ++t)
        if (zs[t].length() >= zs[s].length() && !seen[t]) ok = false;
    }
    if (ok) return threshold;
  }
  return ds.back();
}

/// All ways to write `target` as a non-negative combination of `gens`,
/// as exponent vectors (knapsack enumeration).
inline void knapsack(const std::vector<std::int64_t>& gens, std::size_t index, std::int64_t target,
                     std::vector<std::uint32_t>& current, std::vector<std::vector<std::uint32_t>>& out) {
  if (index == gens.size()) {
    if (target == 0) out.push_back(current);
    return;
  }
  for (std::uint32_t k = 0; static_cast<std::int64_t>(k) * gens[index] <= target; ++k) {
    current[index] = k;
    knapsack(gens, index + 1, target - static_cast<std::int64_t>(k) * gens[index], current, out);
  }
  current[index] = 0;
}

inline std::vector<Factorization> numerical_factorizations(const std::vector<std::int64_t>& gens,
                                                           std::int64_t target) {
  std::vector<std::vector<std::uint32_t>> vectors;
  std::vector<std::uint32_t> current(gens.size(), 0);
  knapsack(gens, 0, target, current, vectors);
  std::vector<Factorization> out;
  for (const auto& v : vectors) {
    std::vector<Factorization::Term> terms;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i]) terms.emplace_back(static_cast<factorsmith::AtomIndex>(i), v[i]);
    out.emplace_back(std::move(terms));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Coin-representability of n by the generators.
inline bool representable(const std::vector<std::int64_t>& gens, std::int64_t n) {
  std::vector<char> ok(static_cast<std::size_t>(n) + 1, 0);
  ok[0] = 1;
  for (std::int64_t x = 1; x <= n; ++x)
    for (auto g : gens)
      if (g <= x && ok[x - g]) ok[x] = 1;
  return ok[n];
}

}  // namespace oracle
