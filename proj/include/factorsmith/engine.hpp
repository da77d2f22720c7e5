#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "factorsmith/core.hpp"

namespace factorsmith {

// A backend exposes a reduced monoid through canonical representatives.
//
// quotients(x, i) returns every y with atom(i) * y == x. Cancellative
// backends return at most one element; ideal monoids may return several.
// atom_candidates(x) must contain every atom index dividing x.
// atoms_within(bound) lists the indices of all atoms of size <= bound. The
// atom table may grow (indices stay stable) while answering either query.
template <class B>
concept MonoidBackend = requires(B& b, const typename B::element_type& x, AtomIndex i,
                                 std::uint64_t bound) {
  typename B::element_type;
  { b.name() } -> std::convertible_to<std::string>;
  { b.is_unit(x) } -> std::same_as<bool>;
  { b.canonical(x) } -> std::convertible_to<typename B::element_type>;
  { b.describe(x) } -> std::convertible_to<std::string>;
  { b.atom(i) } -> std::convertible_to<typename B::element_type>;
  { b.atoms_within(bound) } -> std::convertible_to<std::vector<AtomIndex>>;
  { b.atom_candidates(x) } -> std::convertible_to<std::vector<AtomIndex>>;
  { b.quotients(x, i) } -> std::convertible_to<std::vector<typename B::element_type>>;
  { b.multiply(x, x) } -> std::convertible_to<typename B::element_type>;
  { b.element_sweep(bound) } -> std::convertible_to<std::vector<typename B::element_type>>;
  { b.is_finite() } -> std::same_as<bool>;
};

struct EngineLimits {
  /// Total number of factorizations kept in the memo before giving up.
  std::size_t max_factorizations = 30'000'000;
  /// Total number of distinct elements memoized.
  std::size_t max_elements = 4'000'000;
};

template <MonoidBackend B>
class Engine {
 public:
  using element = typename B::element_type;

  explicit Engine(B& backend, EngineLimits limits = {}) : backend_(backend), limits_(limits) {}

  B& backend() { return backend_; }

  /// Complete set of factorizations of x, sorted. Depth-first division by
  /// atoms in non-decreasing index order, memoized per element.
  const std::vector<Factorization>& factorizations(const element& x) {
    const element key = backend_.canonical(x);
    if (auto it = fact_memo_.find(key); it != fact_memo_.end()) return it->second;

    std::vector<Factorization> out;
    if (backend_.is_unit(key)) {
      out.emplace_back();
    } else {
      for (AtomIndex i : backend_.atom_candidates(key)) {
        for (const element& y : backend_.quotients(key, i)) {
          if (backend_.is_unit(y)) {
            out.push_back(Factorization::atom(i));
            continue;
          }
          const auto& sub = factorizations(y);
          for (const Factorization& z : sub) {
            if (z.min_atom() >= i) out.push_back(z.times(i));
          }
        }
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
    }
    stored_ += out.size();
    if (stored_ > limits_.max_factorizations || fact_memo_.size() >= limits_.max_elements) {
      throw SweepOverflow("factorization memo exceeded its budget at " + backend_.describe(key));
    }
    return fact_memo_.emplace(key, std::move(out)).first->second;
  }

  /// Set of lengths of x, computed directly from the division recursion
  /// without materializing factorizations.
  const LengthSet& length_set(const element& x) {
    const element key = backend_.canonical(x);
    if (auto it = length_memo_.find(key); it != length_memo_.end()) return it->second;

    std::vector<Length> values;
    if (backend_.is_unit(key)) {
      values.push_back(0);
    } else {
      for (AtomIndex i : backend_.atom_candidates(key)) {
        for (const element& y : backend_.quotients(key, i)) {
          if (backend_.is_unit(y)) {
            values.push_back(1);
            continue;
          }
          for (Length l : length_set(y).values) values.push_back(l + 1);
        }
      }
    }
    if (length_memo_.size() >= limits_.max_elements) {
      throw SweepOverflow("length memo exceeded its budget at " + backend_.describe(key));
    }
    return length_memo_.emplace(key, make_length_set(std::move(values))).first->second;
  }

  Length catenary_degree(const element& x) { return factorsmith::catenary_degree(factorizations(x)); }

  Length monotone_catenary_degree(const element& x) {
    return factorsmith::monotone_catenary_degree(factorizations(x));
  }

  void clear() {
    fact_memo_.clear();
    length_memo_.clear();
    stored_ = 0;
  }

 private:
  B& backend_;
  EngineLimits limits_;
  std::map<element, std::vector<Factorization>> fact_memo_;
  std::map<element, LengthSet> length_memo_;
  std::size_t stored_ = 0;
};

/// Per-element data handed to sweep observers.
struct ElementRecord {
  std::string element;
  LengthSet lengths;
  const std::vector<Factorization>* factorizations = nullptr;  // null in lengths-only sweeps
  Length catenary = 0;
  Length monotone_catenary = 0;
  bool monotone_computed = false;
};

using SweepObserver = std::function<void(const ElementRecord&)>;

struct SweepOptions {
  bool catenary = true;
  bool monotone = true;
  bool daleth = true;
  /// Elements with more factorizations than this skip the O(n^3)
  /// monotone search; the report counts them.
  std::size_t monotone_limit = 700;
  EngineLimits limits{};
  SweepObserver observer{};
};

namespace detail {

template <class B>
std::optional<bool> exact_half_factorial(B& backend) {
  if constexpr (requires { { backend.exact_half_factorial() } -> std::convertible_to<std::optional<bool>>; }) {
    return backend.exact_half_factorial();
  } else {
    return std::nullopt;
  }
}

template <class B, class E>
bool in_scope(B& backend, const E& x) {
  if constexpr (requires { { backend.in_scope(x) } -> std::same_as<bool>; }) {
    return backend.in_scope(x);
  } else {
    return true;
  }
}

}  // namespace detail

/// ℸ over the atom table up to `bound`: the largest min(L(uv) \ {2}) over
/// atom pairs whose product has more than one length; 0 if there is none.
/// When `pair_deltas` is given, the distances of every L(uv) are merged in.
/// Backends with an in_scope(x) member restrict the scan to products inside
/// that divisor-closed set; `skipped` counts the pairs left out.
template <MonoidBackend B>
Length daleth(Engine<B>& engine, std::uint64_t bound, std::vector<Length>* pair_deltas = nullptr,
              std::uint64_t* skipped = nullptr) {
  B& backend = engine.backend();
  const std::vector<AtomIndex> atoms = backend.atoms_within(bound);
  Length best = 0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    for (std::size_t j = i; j < atoms.size(); ++j) {
      const auto product = backend.multiply(backend.atom(atoms[i]), backend.atom(atoms[j]));
      if (!detail::in_scope(backend, product)) {
        if (skipped) ++*skipped;
        continue;
      }
      const LengthSet& lengths = engine.length_set(product);
      if (lengths.values.size() < 2) continue;
      if (pair_deltas) *pair_deltas = merge_delta(*pair_deltas, delta_of(lengths));
      for (Length l : lengths.values) {
        if (l != 2) {
          best = std::max(best, l);
          break;
        }
      }
    }
  }
  return best;
}

template <MonoidBackend B>
Length daleth(B& backend, std::uint64_t bound) {
  Engine<B> engine(backend);
  return daleth(engine, bound);
}

/// Aggregates element-level invariants over element_sweep(bound). With
/// daleth enabled, the distance set also covers the atom-pair products.
template <MonoidBackend B>
InvariantReport sweep_invariants(Engine<B>& engine, std::uint64_t bound, const SweepOptions& options = {}) {
  B& backend = engine.backend();
  InvariantReport report;
  report.backend = backend.name();
  report.sweep_bound = bound;
  report.lower_bound_only = !backend.is_finite();

  Rational rho = Rational::make(1, 1);
  for (const auto& x : backend.element_sweep(bound)) {
    ++report.elements;
    ElementRecord record;
    record.lengths = engine.length_set(x);
    report.delta_set = merge_delta(report.delta_set, delta_of(record.lengths));
    rho = std::max(rho, rho_of(record.lengths));
    if (record.lengths.values.size() > 1) report.half_factorial = false;

    if (options.catenary) {
      const auto& z = engine.factorizations(x);
      record.factorizations = &z;
      record.catenary = catenary_degree(z);
      report.catenary = std::max(report.catenary, record.catenary);
      if (options.monotone) {
        if (z.size() <= options.monotone_limit) {
          record.monotone_catenary = monotone_catenary_degree(z);
          record.monotone_computed = true;
          report.monotone_catenary = std::max(report.monotone_catenary, record.monotone_catenary);
        } else {
          ++report.monotone_skipped;
        }
      }
    }
    if (options.observer) {
      record.element = backend.describe(x);
      options.observer(record);
    }
  }
  report.elasticity = rho;
  report.atoms = backend.atoms_within(bound).size();
  if (options.daleth) {
    report.daleth = daleth(engine, bound, &report.delta_set, &report.daleth_pairs_skipped);
    if (report.daleth > 0) report.half_factorial = false;
  }
  if (auto exact = detail::exact_half_factorial(backend)) {
    report.half_factorial = report.half_factorial && *exact;
  }
  return report;
}

template <MonoidBackend B>
InvariantReport sweep_invariants(B& backend, std::uint64_t bound, const SweepOptions& options = {}) {
  Engine<B> engine(backend, options.limits);
  return sweep_invariants(engine, bound, options);
}

}  // namespace factorsmith
