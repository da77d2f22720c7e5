#include "factorsmith/suites.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "factorsmith/fprimary.hpp"
#include "factorsmith/numonoid.hpp"
#include "factorsmith/quadorder.hpp"
#include "factorsmith/zerosum.hpp"

namespace factorsmith::suites {

using json = nlohmann::ordered_json;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep))
    if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

std::string join(const std::vector<Length>& xs) {
  std::string out = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + std::to_string(xs[i]);
  return out + "}";
}

Length max_or_zero(const std::vector<Length>& xs) { return xs.empty() ? 0 : xs.back(); }

SweepOptions options_with(const SweepObserver& outer, bool catenary, bool monotone, bool daleth,
                          SweepObserver inner = {}) {
  SweepOptions o;
  o.catenary = catenary;
  o.monotone = monotone;
  o.daleth = daleth;
  if (outer || inner) {
    o.observer = [outer, inner](const ElementRecord& r) {
      if (inner) inner(r);
      if (outer) outer(r);
    };
  }
  return o;
}

Verdict verdict(std::string claim, std::string expected, std::string computed, bool pass, std::string witness = "") {
  Verdict v;
  v.claim = std::move(claim);
  v.expected = std::move(expected);
  v.computed = std::move(computed);
  v.pass = pass;
  v.witness = std::move(witness);
  return v;
}

// ------------------------------------------------------------ numerical

void suite_example55(RunReport& out, const Params& p, const SweepObserver& observer) {
  const bool doubled = p.flag("doubled", true);
  for (auto e : p.integers("e", "2,3,4,5")) {
    if (e < 2) throw std::invalid_argument("e must be at least 2");
    std::vector<std::int64_t> gens(static_cast<std::size_t>(e));
    std::iota(gens.begin(), gens.end(), e);
    const auto m = numonoid::NumericalMonoid::make(gens);
    numonoid::Backend backend(m);
    const std::uint64_t bound = 4 * static_cast<std::uint64_t>(m.frobenius() + 2 * e);
    const auto opts = options_with(observer, true, false, false);
    const auto r = sweep_invariants(backend, bound, opts);
    out.verdicts.push_back(verdict("catenary of " + m.to_string(), "3", std::to_string(r.catenary), r.catenary == 3,
                                   "sweep bound " + std::to_string(bound)));
    json entry{{"monoid", m.to_string()}, {"frobenius", m.frobenius()}, {"sweep", sweep_json(r)}};
    if (doubled) {
      const auto r2 = sweep_invariants(backend, 2 * bound, opts);
      out.verdicts.push_back(verdict("catenary of " + m.to_string() + " at doubled bound", "3",
                                     std::to_string(r2.catenary), r2.catenary == 3,
                                     "sweep bound " + std::to_string(2 * bound)));
      entry["doubled"] = sweep_json(r2);
    }
    out.data["monoids"].push_back(entry);
  }
}

numonoid::NumericalMonoid random_monoid(std::mt19937_64& rng, std::int64_t max_rank, std::int64_t max_generator) {
  std::uniform_int_distribution<std::int64_t> rank(2, max_rank);
  std::uniform_int_distribution<std::int64_t> gen(2, max_generator);
  while (true) {
    const auto s = rank(rng);
    std::vector<std::int64_t> gens;
    while (static_cast<std::int64_t>(gens.size()) < s) {
      const auto g = gen(rng);
      if (std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);
    }
    std::int64_t g = 0;
    for (auto x : gens) g = std::gcd(g, x);
    if (g == 1) return numonoid::NumericalMonoid::make(gens);
  }
}

void suite_mindelta(RunReport& out, const Params& p, const SweepObserver& observer) {
  const auto count = p.integer("count", 100);
  const auto seed = p.integer("seed", 1);
  const auto max_rank = p.integer("max_rank", 4);
  const auto max_generator = p.integer("max_generator", 40);
  if (max_rank < 2 || max_generator < 3) throw std::invalid_argument("need max_rank >= 2 and max_generator >= 3");
  std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
  for (std::int64_t i = 0; i < count; ++i) {
    const auto m = random_monoid(rng, max_rank, max_generator);
    numonoid::Backend backend(m);
    const auto bound = numonoid::completeness_bound(m);
    const auto r = sweep_invariants(backend, bound, options_with(observer, false, false, false));
    const auto formula = numonoid::min_delta_gcd(m);
    const std::string swept = r.delta_set.empty() ? "none" : std::to_string(r.delta_set.front());
    out.verdicts.push_back(verdict("min delta of " + m.to_string(), std::to_string(formula), swept,
                                   !r.delta_set.empty() && static_cast<std::int64_t>(r.delta_set.front()) == formula,
                                   "sweep bound " + std::to_string(bound)));
  }
}

// -------------------------------------------------------- inequalities

struct ChainTally {
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  std::string first;
};

SweepObserver chain_checker(ChainTally& tally) {
  return [&tally](const ElementRecord& r) {
    if (!r.factorizations || r.factorizations->size() < 2) return;
    ++tally.checked;
    const Length lower = 2 + max_or_zero(delta_of(r.lengths));
    bool ok = lower <= r.catenary;
    if (r.monotone_computed) ok = ok && r.catenary <= r.monotone_catenary;
    if (!ok) {
      if (tally.first.empty())
        tally.first = r.element + ": 2+maxΔ=" + std::to_string(lower) + " c=" + std::to_string(r.catenary) +
                      " c_mon=" + std::to_string(r.monotone_catenary);
      ++tally.violations;
    }
  };
}

template <class B>
void chain_and_daleth(RunReport& out, B& backend, std::uint64_t bound, bool cancellative, const SweepObserver& observer,
                      std::uint64_t monotone_limit = 700) {
  ChainTally tally;
  auto opts = options_with(observer, cancellative, cancellative, true, cancellative ? chain_checker(tally) : SweepObserver{});
  opts.monotone_limit = monotone_limit;
  const auto r = sweep_invariants(backend, bound, opts);
  json entry{{"sweep", sweep_json(r)}, {"cancellative", cancellative}};
  if (cancellative) {
    out.verdicts.push_back(verdict("chain inequality on " + r.backend, "0 violations",
                                   std::to_string(tally.violations) + " violations in " + std::to_string(tally.checked) +
                                       " elements",
                                   tally.violations == 0, tally.first));
    entry["chain_checked"] = tally.checked;
  }
  if (!r.half_factorial) {
    const Length cap = 2 + max_or_zero(r.delta_set);
    out.verdicts.push_back(verdict("daleth bound on " + r.backend, "<= " + std::to_string(cap), std::to_string(r.daleth),
                                   r.daleth <= cap));
  }
  out.data["backends"].push_back(entry);
}

void suite_inequalities(RunReport& out, const Params& p, const SweepObserver& observer) {
  const auto norm_bound = static_cast<std::uint64_t>(p.integer("norm_bound", 2000));
  for (const auto& text : split(p.text("monoids", "2,3;3,5,7;4,6,9,10;3,4,5;5,7,11"), ';')) {
    numonoid::Backend b(numonoid::parse(text));
    chain_and_daleth(out, b, numonoid::completeness_bound(b.monoid()), true, observer);
  }
  for (const auto& text : split(p.text("groups", "3;2x2;4"), ';')) {
    zerosum::Backend b(zerosum::parse(text));
    chain_and_daleth(out, b, 3ull * b.davenport(), true, observer);
  }
  {
    auto inv = quadorder::invertible_backend(quadorder::QuadOrder::make(-1, 3));
    chain_and_daleth(out, inv, norm_bound, true, observer);
  }
  for (auto [d, f] : std::vector<std::pair<quadorder::Int, quadorder::Int>>{{-1, 3}, {-3, 2}, {5, 2}}) {
    const auto o = quadorder::QuadOrder::make(d, f);
    for (const auto& m : quadorder::maximal_ideals_over(o, f)) {
      auto local = quadorder::local_component_backend(o, m, true);
      chain_and_daleth(out, local, norm_bound, true, observer);
    }
  }
  {
    fprimary::FieldTower t16(fprimary::FiniteField::parse(2, "y4=y+1"), 1);
    fprimary::ElementBackend ck(fprimary::ProfileRing::parse(t16, "K,V(1,y,y^2),L"));
    chain_and_daleth(out, ck, 6, true, observer);
    fprimary::FieldTower t4(fprimary::FiniteField::standard(2, 2), 1);
    fprimary::ElementBackend gap(fprimary::ProfileRing::gap(t4, 2));
    chain_and_daleth(out, gap, 8, true, observer);
  }
  // Non-cancellative monoids: only the daleth bound applies.
  {
    auto all = quadorder::all_ideals_backend(quadorder::QuadOrder::make(-1, 3));
    chain_and_daleth(out, all, std::min<std::uint64_t>(norm_bound, 500), false, observer);
    fprimary::FieldTower t4(fprimary::FiniteField::standard(2, 2), 1);
    fprimary::IdealBackend ideals(fprimary::ProfileRing::gap(t4, 2), {.max_width = 2, .principal_only = false});
    chain_and_daleth(out, ideals, 6, false, observer);
  }
}

// -------------------------------------------------------- finite primary

struct GapConfig {
  std::uint32_t field_size;
  std::uint32_t n;
  std::uint32_t width;
};

std::vector<GapConfig> gap_configs(const Params& p, const std::string& fallback) {
  std::vector<GapConfig> out;
  for (const auto& c : split(p.text("configs", fallback), ',')) {
    const auto parts = split(c, ':');
    if (parts.size() != 3) throw std::invalid_argument("config must be |L|:n:width, got '" + c + "'");
    out.push_back({static_cast<std::uint32_t>(std::stoul(parts[0])), static_cast<std::uint32_t>(std::stoul(parts[1])),
                   static_cast<std::uint32_t>(std::stoul(parts[2]))});
  }
  return out;
}

fprimary::FieldTower prime_tower(std::uint32_t p, std::uint32_t field_size) {
  std::uint32_t e = 0;
  for (std::uint64_t q = 1; q < field_size; q *= p) ++e;
  std::uint64_t check = 1;
  for (std::uint32_t i = 0; i < e; ++i) check *= p;
  if (check != field_size || e == 0) throw std::invalid_argument(std::to_string(field_size) + " is not a power of " + std::to_string(p));
  return fprimary::FieldTower(fprimary::FiniteField::standard(p, e), 1);
}

json gap_json(const fprimary::GapRingReport& g) {
  return json{{"ring", g.ring},
              {"n", g.n},
              {"window_width", g.window_width},
              {"valuation_bound", g.valuation_bound},
              {"element_half_factorial", g.element.half_factorial},
              {"element_witness", g.element.witness_text},
              {"ideals", sweep_json(g.ideals)},
              {"principal", sweep_json(g.principal)},
              {"decomposed", g.decomposed}};
}

void suite_example47(RunReport& out, const Params& p, const SweepObserver&) {
  const auto ch = static_cast<std::uint32_t>(p.integer("char", 2));
  for (const auto& c : gap_configs(p, "4:2:2,4:3:2,8:2:2,8:3:1")) {
    const auto g = fprimary::verify_gap_ring(prime_tower(ch, c.field_size), c.n, c.width);
    const std::string where = g.ring + " (width <= " + std::to_string(c.width) + ")";
    auto add = [&](const std::string& what, const InvariantReport& r) {
      const Length rhs = 2 + max_or_zero(r.delta_set);
      out.verdicts.push_back(verdict("daleth equals 2 + sup delta on " + what + " of " + where,
                                     std::to_string(rhs) + " (Δ=" + join(r.delta_set) + ")", std::to_string(r.daleth),
                                     !r.delta_set.empty() && r.daleth == rhs,
                                     std::to_string(r.daleth_pairs_skipped) + " pairs outside the window"));
    };
    add("ideals", g.ideals);
    add("principal ideals", g.principal);
    out.verdicts.push_back(verdict("elements not half-factorial in " + g.ring, "false",
                                   g.element.half_factorial ? "true" : "false", !g.element.half_factorial,
                                   "atom " + g.element.witness_text));
    out.data["rings"].push_back(gap_json(g));
  }
}

void suite_prop58(RunReport& out, const Params& p, const SweepObserver&) {
  const auto ch = static_cast<std::uint32_t>(p.integer("char", 2));
  for (const auto& c : gap_configs(p, "4:1:2,4:2:2,8:2:2,4:3:1")) {
    const auto g = fprimary::verify_gap_ring(prime_tower(ch, c.field_size), c.n, c.width);
    const auto& ring = fprimary::ProfileRing::gap(prime_tower(ch, c.field_size), c.n);
    out.verdicts.push_back(verdict("m^2 inside a proper principal ideal of " + g.ring, "true",
                                   g.containment.contained ? "true" : "false", g.containment.contained,
                                   g.containment.witness ? fprimary::describe(ring, *g.containment.witness) : ""));
    out.verdicts.push_back(verdict("every swept ideal of " + g.ring + " is (X^n R)^k J with J an atom",
                                   std::to_string(g.ideals.elements) + " ideals", std::to_string(g.decomposed) + " ideals",
                                   g.decomposition_holds,
                                   "width <= " + std::to_string(c.width) + ", valuation <= " +
                                       std::to_string(g.valuation_bound)));
    out.data["rings"].push_back(gap_json(g));
  }
  for (const auto& spec : split(p.text("extensions", "4/2,8/2,16/2,16/4,9/3"), ',')) {
    const auto parts = split(spec, '/');
    if (parts.size() != 2) throw std::invalid_argument("extension must be |L|/|K|, got '" + spec + "'");
    const auto lq = std::stoul(parts[0]);
    const auto kq = std::stoul(parts[1]);
    std::uint32_t pr = 2;
    while (kq % pr) ++pr;
    const auto tower_l = prime_tower(pr, static_cast<std::uint32_t>(lq));
    std::uint32_t k = 0;
    for (std::uint64_t q = 1; q < kq; q *= pr) ++k;
    const fprimary::FieldTower tower(tower_l.L(), k);
    const auto check = fprimary::two_generated_dual_check(tower);
    const bool expected = check.relative_degree <= 2;
    std::string witness;
    if (check.generators)
      witness = "generators " + tower.L().name(check.generators->first) + ", " + tower.L().name(check.generators->second);
    out.verdicts.push_back(verdict("GF(" + parts[0] + ") is two-generated over GF(" + parts[1] + ")",
                                   expected ? "true" : "false", check.two_generated ? "true" : "false",
                                   check.two_generated == expected, witness));
  }
}

void suite_remark514(RunReport& out, const Params&, const SweepObserver&) {
  const auto r = fprimary::verify_nonhalffactorial_ideal_example();
  const fprimary::FieldTower tower(fprimary::FiniteField::parse(2, "y4=y+1"), 1);
  const auto& L = tower.L();
  auto names = [&](const std::vector<fprimary::Elem>& xs) {
    std::string s = "{";
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + L.name(xs[i]);
    return s + "}";
  };
  auto yes = [](bool b) { return std::string(b ? "true" : "false"); };
  out.data["ring"] = r.ring;
  out.data["ideal"] = r.ideal;
  out.data["target"] = names(r.target);
  out.verdicts.push_back(verdict("I is an atom of I(R) (quotient scan)", "true", yes(r.atom.atom), r.atom.atom,
                                 std::to_string(r.atom.ideals_scanned) + " proper ideals, " +
                                     std::to_string(r.atom.pairs_scanned) + " pairs"));
  out.verdicts.push_back(verdict("I is an atom of I(R) (divisor search)", "true", yes(r.atom_by_divisor_search),
                                 r.atom_by_divisor_search));
  out.verdicts.push_back(verdict("I inside m^2", "true", yes(r.ideal_in_m2), r.ideal_in_m2));
  out.verdicts.push_back(verdict("m^3 inside I", "true", yes(r.m3_in_ideal), r.m3_in_ideal));
  out.verdicts.push_back(verdict("I is not principal", "true", yes(r.nonprincipal), r.nonprincipal));
  out.verdicts.push_back(verdict("no subspace pair of V realizes T(I)", "false", yes(r.scan.realized),
                                 !r.scan.realized && r.scan.subspaces == 16 && r.scan.pairs == 256,
                                 std::to_string(r.scan.subspaces) + " subspaces, " + std::to_string(r.scan.pairs) + " pairs"));
  for (const auto& c : r.cases) {
    out.verdicts.push_back(verdict("a^-1 T(I) not inside V for a = " + L.name(c.a), "false", yes(c.inside_v), !c.inside_v,
                                   "W = " + L.name(c.multiplier) + " * T = " + names(c.w)));
    out.data["cases"].push_back(json{{"a", L.name(c.a)}, {"multiplier", L.name(c.multiplier)}, {"w", names(c.w)},
                                     {"inside_v", c.inside_v}});
  }
  out.verdicts.push_back(verdict("L = {ab : a, b in V}", "true", yes(r.products_cover_l), r.products_cover_l));
  out.verdicts.push_back(verdict("element monoid half-factorial", "true", yes(r.element_half_factorial),
                                 r.element_half_factorial));
  out.verdicts.push_back(verdict("I(R) half-factorial", "false", yes(r.ideal_half_factorial), !r.ideal_half_factorial,
                                 "nonprincipal atom I inside m^2"));
  out.verdicts.push_back(verdict("I*(R) half-factorial", "true", yes(r.invertible_half_factorial),
                                 r.invertible_half_factorial));
  out.verdicts.push_back(verdict("(m:m) = K + X L[[X]] = <1, y^3 X>", "true", yes(r.multiplier_identity),
                                 r.multiplier_identity, "checked in R / X^3"));
  out.data["quotient_ideals"] = r.quotient_ideals;
}

// ------------------------------------------------------ quadratic orders

void suite_stability(RunReport& out, const Params& p, const SweepObserver&) {
  const auto bound = p.integer("norm_bound", 500);
  for (auto d : p.integers("d", "-1,-3,-7,5,13")) {
    for (auto f : p.integers("f", "2,3,4,6")) {
      const auto o = quadorder::QuadOrder::make(d, f);
      std::size_t stable = 0;
      std::string witness;
      const auto ideals = quadorder::enumerate_ideals(o, bound);
      for (const auto& i : ideals) {
        if (quadorder::is_stable(o, i)) ++stable;
        else if (witness.empty()) witness = "unstable " + i.to_string();
      }
      out.verdicts.push_back(verdict("every ideal of " + o.to_string() + " with norm <= " + std::to_string(bound) +
                                         " is stable",
                                     std::to_string(ideals.size()), std::to_string(stable), stable == ideals.size(),
                                     witness));
    }
  }
}

struct RhoTracker {
  Rational best = Rational::make(1, 1);
  std::string where;
};

SweepObserver rho_tracker(RhoTracker& t) {
  return [&t](const ElementRecord& r) {
    const auto rho = rho_of(r.lengths);
    if (t.best < rho) {
      t.best = rho;
      t.where = r.element + " L=" + r.lengths.to_string();
    }
  };
}

void suite_thm510(RunReport& out, const Params& p, const SweepObserver& observer) {
  const auto d = p.integer("d", -1);
  const auto inert_f = p.integer("inert_f", 3);
  const auto split_f = p.integer("split_f", 5);
  const auto bound = static_cast<std::uint64_t>(p.integer("norm_bound", 5000));
  const auto local_bound = static_cast<std::uint64_t>(p.integer("local_bound", 390625));

  for (auto f : {inert_f, split_f}) {
    const auto o = quadorder::QuadOrder::make(d, f);
    const bool expect_bijective = quadorder::splitting_type(o.field(), f) != quadorder::Splitting::split;
    out.verdicts.push_back(verdict("pi bijective for " + o.to_string(), expect_bijective ? "true" : "false",
                                   quadorder::pi_bijective(o) ? "true" : "false",
                                   quadorder::pi_bijective(o) == expect_bijective,
                                   std::string("conductor prime ") + quadorder::to_string(quadorder::splitting_type(o.field(), f))));
  }
  {
    const auto o = quadorder::QuadOrder::make(d, inert_f);
    auto inv = quadorder::invertible_backend(o);
    RhoTracker t;
    const auto r = sweep_invariants(inv, bound, options_with(observer, true, false, false, rho_tracker(t)));
    out.verdicts.push_back(verdict("I*(O) half-factorial with max rho 1 for " + o.to_string(), "true, 1",
                                   std::string(r.half_factorial ? "true" : "false") + ", " + r.elasticity.to_string(),
                                   r.half_factorial && r.elasticity == Rational::make(1, 1),
                                   "norm <= " + std::to_string(bound)));
    out.data["inert"] = sweep_json(r);
  }
  {
    const auto o = quadorder::QuadOrder::make(d, split_f);
    auto inv = quadorder::invertible_backend(o);
    auto all = quadorder::all_ideals_backend(o);
    RhoTracker ti;
    RhoTracker ta;
    const auto ri = sweep_invariants(inv, bound, options_with(observer, true, false, false, rho_tracker(ti)));
    const auto ra = sweep_invariants(all, bound, options_with(observer, false, false, false, rho_tracker(ta)));
    const bool found = Rational::make(2, 1) <= ti.best || Rational::make(2, 1) <= ta.best;
    out.verdicts.push_back(verdict("sweep of " + o.to_string() + " with norm <= " + std::to_string(bound) +
                                       " exhibits rho(L) >= 2",
                                   ">= 2", "I*: " + ti.best.to_string() + ", I: " + ta.best.to_string(), found,
                                   ta.best < ti.best ? ti.where : ta.where));
    out.data["split"] = json{{"invertible", sweep_json(ri)}, {"all", sweep_json(ra)}};

    if (local_bound > 0) {
      RhoTracker tl;
      json locals = json::array();
      for (const auto& m : quadorder::maximal_ideals_over(o, split_f)) {
        auto local = quadorder::local_component_backend(o, m, true);
        const auto r = sweep_invariants(local, local_bound, options_with(observer, false, false, false, rho_tracker(tl)));
        locals.push_back(sweep_json(r));
      }
      out.data["split_local"] = locals;
      out.verdicts.push_back(verdict("local principal components at " + std::to_string(split_f) + " reach rho(L) >= 2 with norm <= " +
                                         std::to_string(local_bound),
                                     ">= 2", tl.best.to_string(), Rational::make(2, 1) <= tl.best, tl.where));
    }
  }
}

void suite_prop57(RunReport& out, const Params& p, const SweepObserver& observer) {
  const auto bound = static_cast<std::uint64_t>(p.integer("norm_bound", 10000));
  const auto cap = p.integer("catenary_cap", 5);
  for (const auto& spec : split(p.text("orders", "-1:3,-3:2,5:2"), ',')) {
    const auto parts = split(spec, ':');
    if (parts.size() != 2) throw std::invalid_argument("order must be d:f, got '" + spec + "'");
    const auto o = quadorder::QuadOrder::make(std::stoll(parts[0]), std::stoll(parts[1]));
    if (!quadorder::is_prime(o.f())) throw std::invalid_argument("conductor must be prime for this check");
    for (const auto& m : quadorder::maximal_ideals_over(o, o.f())) {
      auto local = quadorder::local_component_backend(o, m, true);
      std::uint64_t violations = 0;
      std::string first;
      auto check = [&](const ElementRecord& r) {
        if (static_cast<std::int64_t>(r.catenary) > cap) {
          if (first.empty()) first = r.element + " c=" + std::to_string(r.catenary);
          ++violations;
        }
      };
      const auto r = sweep_invariants(local, bound, options_with(observer, true, false, false, check));
      out.verdicts.push_back(verdict("c(a) <= " + std::to_string(cap) + " on " + r.backend, "0 violations",
                                     std::to_string(violations) + " violations, max c = " + std::to_string(r.catenary),
                                     violations == 0, first));
      out.data["components"].push_back(sweep_json(r));
    }
  }
}

void suite_zerosum_bound(RunReport& out, const Params& p, const SweepObserver& observer) {
  const auto bound_factor = p.integer("length_factor", 3);
  for (const auto& text : split(p.text("groups", "3;2x2;4;2x4"), ';')) {
    const auto g = zerosum::parse(text);
    zerosum::Backend b(g);
    const auto bound = static_cast<std::uint64_t>(bound_factor) * b.davenport();
    const auto r = sweep_invariants(b, bound, options_with(observer, true, false, false));
    const auto lower = std::max(g.exponent(), 1 + g.rank());
    const bool factorial = g.order() <= 2;
    out.verdicts.push_back(verdict("c(B(" + g.to_string() + ")) >= max{exp, 1 + rank}", ">= " + std::to_string(lower),
                                   std::to_string(r.catenary), factorial || r.catenary >= lower,
                                   "D(G) = " + std::to_string(b.davenport()) + ", length <= " + std::to_string(bound)));
    out.data["groups"].push_back(sweep_json(r));
  }
}

using SuiteFn = std::function<void(RunReport&, const Params&, const SweepObserver&)>;

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r{
      {"inequalities", suite_inequalities}, {"example55", suite_example55},
      {"mindelta", suite_mindelta},         {"thm510", suite_thm510},
      {"prop57", suite_prop57},             {"remark514", suite_remark514},
      {"example47", suite_example47},       {"prop58", suite_prop58},
      {"zerosum-bound", suite_zerosum_bound}, {"stability", suite_stability},
  };
  return r;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

}  // namespace

std::string Params::text(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  const std::string v = it == values_.end() ? fallback : it->second;
  used_[key] = v;
  return v;
}

std::int64_t Params::integer(const std::string& key, std::int64_t fallback) const {
  const std::string v = text(key, std::to_string(fallback));
  try {
    std::size_t pos = 0;
    const auto out = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw std::invalid_argument("parameter " + key + " must be an integer, got '" + v + "'");
  }
}

bool Params::flag(const std::string& key, bool fallback) const {
  const std::string v = text(key, fallback ? "true" : "false");
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument("parameter " + key + " must be true or false, got '" + v + "'");
}

std::vector<std::int64_t> Params::integers(const std::string& key, const std::string& fallback) const {
  std::vector<std::int64_t> out;
  for (const auto& part : split(text(key, fallback), ',')) {
    try {
      out.push_back(std::stoll(part));
    } catch (const std::exception&) {
      throw std::invalid_argument("parameter " + key + " must be a list of integers");
    }
  }
  return out;
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file " + path);
  std::map<std::string, std::string> out;
  std::string line;
  for (int n = 1; std::getline(in, line); ++n) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::runtime_error(path + ":" + std::to_string(n) + ": expected key=value");
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

bool RunReport::pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

RunReport run_suite(const std::string& suite, const Params& params, const SweepObserver& observer) {
  const auto& reg = registry();
  const auto it = std::find_if(reg.begin(), reg.end(), [&](const auto& e) { return e.first == suite; });
  if (it == reg.end()) throw std::invalid_argument("unknown suite '" + suite + "'");
  RunReport out;
  out.suite = suite;
  const auto start = std::chrono::steady_clock::now();
  it->second(out, params, observer);
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.parameters = params.used();
  return out;
}

json sweep_json(const InvariantReport& r) {
  return json{{"backend", r.backend},
              {"sweep_bound", r.sweep_bound},
              {"lower_bound_only", r.lower_bound_only},
              {"elements", r.elements},
              {"atoms", r.atoms},
              {"delta_set", r.delta_set},
              {"elasticity", r.elasticity.to_string()},
              {"catenary", r.catenary},
              {"monotone_catenary", r.monotone_catenary},
              {"monotone_skipped", r.monotone_skipped},
              {"daleth", r.daleth},
              {"daleth_pairs_skipped", r.daleth_pairs_skipped},
              {"half_factorial", r.half_factorial}};
}

json to_json(const RunReport& report, bool with_timing) {
  json out{{"schema", kSchema}, {"suite", report.suite}, {"parameters", report.parameters}};
  json verdicts = json::array();
  for (const auto& v : report.verdicts)
    verdicts.push_back(json{{"claim", v.claim},
                            {"expected", v.expected},
                            {"computed", v.computed},
                            {"tolerance", v.tolerance},
                            {"pass", v.pass},
                            {"witness", v.witness}});
  out["verdicts"] = verdicts;
  out["data"] = report.data;
  out["pass"] = report.pass();
  if (with_timing) out["timing"] = json{{"seconds", report.seconds}};
  return out;
}

std::string to_csv(const RunReport& report) {
  // Reports without verdicts may carry a flat table under data.rows, or a
  // single invariants record.
  json rows;
  if (report.verdicts.empty() && report.data.contains("rows")) rows = report.data["rows"];
  else if (report.verdicts.empty() && report.data.contains("invariants")) rows = json::array({report.data["invariants"]});
  if (!rows.empty()) {
    std::string out;
    for (const auto& [k, v] : rows.front().items()) out += (out.empty() ? "" : ",") + csv_field(k);
    out += "\n";
    for (const auto& row : rows) {
      std::string line;
      bool first = true;
      for (const auto& [k, v] : row.items()) {
        line += (first ? "" : ",") + csv_field(v.is_string() ? v.get<std::string>() : v.dump());
        first = false;
      }
      out += line + "\n";
    }
    return out;
  }
  std::string out = "suite,claim,expected,computed,tolerance,pass,witness\n";
  for (const auto& v : report.verdicts) {
    out += csv_field(report.suite) + "," + csv_field(v.claim) + "," + csv_field(v.expected) + "," +
           csv_field(v.computed) + "," + v.tolerance + "," + (v.pass ? "true" : "false") + "," + csv_field(v.witness) +
           "\n";
  }
  return out;
}

std::string to_table(const RunReport& report) {
  std::ostringstream os;
  os << report.suite << "\n";
  for (const auto& [k, v] : report.parameters) os << "  " << k << " = " << v << "\n";
  auto scalar = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  for (const auto& [k, v] : report.data.items()) {
    if (v.is_primitive()) {
      os << k << ": " << scalar(v) << "\n";
    } else if (v.is_object()) {
      os << k << ":\n";
      for (const auto& [k2, v2] : v.items())
        if (v2.is_primitive() || v2.dump().size() <= 60) os << "  " << k2 << ": " << scalar(v2) << "\n";
    } else if (k == "rows" || k == "atoms") {
      for (const auto& row : v) {
        if (!row.is_object()) {
          os << "  " << scalar(row) << "\n";
          continue;
        }
        std::string line;
        for (const auto& [k2, v2] : row.items()) line += (line.empty() ? "" : "  ") + k2 + "=" + scalar(v2);
        os << "  " << line << "\n";
      }
    } else if (k == "witnesses") {
      for (const auto& w : v) os << "witness: " << w.dump() << "\n";
    }
  }
  for (const auto& v : report.verdicts) {
    os << (v.pass ? "PASS  " : "FAIL  ") << v.claim << ": expected " << v.expected << ", computed " << v.computed;
    if (!v.witness.empty()) os << " [" << v.witness << "]";
    os << "\n";
  }
  if (!report.verdicts.empty()) {
    os << (report.pass() ? "all verdicts pass" : "some verdicts FAIL") << " (" << std::fixed;
    os.precision(2);
    os << report.seconds << " s)\n";
  }
  return os.str();
}

}  // namespace factorsmith::suites
