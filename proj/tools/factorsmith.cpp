#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "factorsmith/fprimary.hpp"
#include "factorsmith/numonoid.hpp"
#include "factorsmith/quadorder.hpp"
#include "factorsmith/suites.hpp"
#include "factorsmith/zerosum.hpp"

namespace fs = factorsmith;
namespace su = factorsmith::suites;

namespace {

constexpr int kInvalid = 2;

struct Common {
  bool json = false;
  bool csv = false;
  std::optional<std::uint64_t> bound;
  std::optional<std::int64_t> seed;
  std::string config;
  std::vector<std::string> params;
  std::string output_dir;
};

void add_common(CLI::App* app, Common& c) {
  auto* j = app->add_flag("--json", c.json, "Print the report as JSON");
  app->add_flag("--csv", c.csv, "Print the verdicts as CSV")->excludes(j);
  app->add_option("--bound", c.bound, "Sweep bound (element size, norm or valuation)");
  app->add_option("--seed", c.seed, "Random seed for randomized suites");
  app->add_option("--config", c.config, "key=value file of suite parameters")->check(CLI::ExistingFile);
  app->add_option("--param", c.params, "Suite parameter key=value (overrides --config)");
  app->add_option("--output-dir", c.output_dir, "Also write <name>.json and <name>.csv here");
}

su::Params collect_params(const Common& c) {
  su::Params p;
  if (!c.config.empty())
    for (const auto& [k, v] : su::read_config(c.config)) p.set(k, v);
  for (const auto& kv : c.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw std::invalid_argument("--param expects key=value, got '" + kv + "'");
    p.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (c.seed) p.set("seed", std::to_string(*c.seed));
  return p;
}

int emit(const su::RunReport& report, const Common& c) {
  if (c.json) std::cout << su::to_json(report).dump(2) << "\n";
  else if (c.csv) std::cout << su::to_csv(report);
  else std::cout << su::to_table(report);

  std::string dir = c.output_dir;
  if (dir.empty())
    if (const char* env = std::getenv("FACTORSMITH_OUTPUT_DIR")) dir = env;
  if (!dir.empty()) {
    std::filesystem::create_directories(dir);
    const auto base = std::filesystem::path(dir) / report.suite;
    std::ofstream(base.string() + ".json") << su::to_json(report).dump(2) << "\n";
    std::ofstream(base.string() + ".csv") << su::to_csv(report);
  }
  return report.pass() ? 0 : 1;
}

// Fills data as {<object>, sweep:{bound}, invariants, witnesses} or the atom list.
template <class B>
void describe_backend(su::RunReport& out, B& backend, std::uint64_t bound, bool atoms_only, bool cancellative) {
  out.data["sweep"] = {{"bound", bound}, {"backend", backend.name()}};
  if (atoms_only) {
    auto list = nlohmann::ordered_json::array();
    for (auto i : backend.atoms_within(bound)) list.push_back(backend.describe(backend.atom(i)));
    out.data["count"] = list.size();
    out.data["atoms"] = list;
    return;
  }
  std::optional<fs::ElementRecord> widest;
  std::optional<fs::ElementRecord> least_connected;
  fs::SweepOptions o;
  o.monotone = cancellative;
  o.observer = [&](const fs::ElementRecord& r) {
    if (!widest || fs::rho_of(widest->lengths) < fs::rho_of(r.lengths)) widest = r;
    if (!least_connected || least_connected->catenary < r.catenary) least_connected = r;
  };
  out.data["invariants"] = su::sweep_json(fs::sweep_invariants(backend, bound, o));
  auto witnesses = nlohmann::ordered_json::array();
  if (widest)
    witnesses.push_back({{"invariant", "elasticity"},
                         {"element", widest->element},
                         {"lengths", widest->lengths.to_string()},
                         {"value", fs::rho_of(widest->lengths).to_string()}});
  if (least_connected)
    witnesses.push_back({{"invariant", "catenary"},
                         {"element", least_connected->element},
                         {"lengths", least_connected->lengths.to_string()},
                         {"value", least_connected->catenary}});
  out.data["witnesses"] = witnesses;
}

fs::fprimary::FieldTower make_tower(std::uint32_t p, std::uint64_t l_size, std::uint64_t k_size, const std::string& modulus) {
  auto degree = [p](std::uint64_t q, const char* what) {
    std::uint32_t e = 0;
    std::uint64_t x = 1;
    while (x < q) x *= p, ++e;
    if (x != q || e == 0) throw std::invalid_argument(std::string(what) + " size " + std::to_string(q) + " is not a power of " + std::to_string(p));
    return e;
  };
  const auto e = degree(l_size, "--L");
  const auto k = degree(k_size, "--K");
  auto field = modulus.empty() ? fs::fprimary::FiniteField::standard(p, e) : fs::fprimary::FiniteField::parse(p, modulus);
  if (field.degree() != e) throw std::invalid_argument("--modulus has degree " + std::to_string(field.degree()) + " but --L needs " + std::to_string(e));
  if (e % k) throw std::invalid_argument("GF(" + std::to_string(k_size) + ") is not a subfield of GF(" + std::to_string(l_size) + ")");
  return fs::fprimary::FieldTower(std::move(field), k);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Factorization invariants of monoids and rings"};
  app.require_subcommand(1);
  Common common;

  std::string generators;
  auto* nm = app.add_subcommand("nm", "Numerical monoid, e.g. 3,5,7");
  nm->add_option("generators", generators, "Comma separated generators")->required();
  bool nm_atoms = false;
  nm->add_flag("--atoms", nm_atoms, "List the atoms instead of invariants");
  add_common(nm, common);

  std::string group;
  auto* zs = app.add_subcommand("zerosum", "Block monoid B(G) of a finite abelian group, e.g. 2x4");
  zs->add_option("group", group, "Invariant factors separated by x")->required();
  bool zs_atoms = false;
  zs->add_flag("--atoms", zs_atoms, "List the minimal zero-sum sequences");
  add_common(zs, common);

  std::int64_t qd = -1;
  std::int64_t qf = 1;
  std::string q_action = "invariants";
  std::string q_monoid = "invertible";
  std::optional<std::uint64_t> norm_bound;
  auto* qo = app.add_subcommand("quadorder", "Ideal monoids of the order Z + f O_K in Q(sqrt d)");
  qo->add_option("--d", qd, "Squarefree d")->required();
  qo->add_option("--f", qf, "Conductor f")->required()->check(CLI::PositiveNumber);
  qo->add_option("--norm-bound", norm_bound, "Largest ideal norm in the sweep");
  qo->add_option("--monoid", q_monoid, "invertible, all, or local:<p> (invertible p-primary ideals)");
  qo->add_option("action", q_action, "invariants | atoms | splitting | verify-thm510")
      ->check(CLI::IsMember({"invariants", "atoms", "splitting", "verify-thm510"}));
  add_common(qo, common);

  std::uint32_t f_char = 2;
  std::uint64_t f_l = 16;
  std::optional<std::uint64_t> f_k;
  std::string f_modulus;
  std::string f_profile;
  std::string f_action = "invariants";
  bool f_ideals = false;
  std::uint32_t f_width = 2;
  auto* fr = app.add_subcommand("fring", "Rings K + S_1 X + ... + X^a L[[X]] over finite fields");
  fr->add_option("--char", f_char, "Characteristic p")->check(CLI::Range(2u, 251u));
  fr->add_option("--L", f_l, "Size of L");
  fr->add_option("--K", f_k, "Size of K (default p)");
  fr->add_option("--modulus", f_modulus, "Defining relation of L, e.g. y4=y+1 (default: a fixed primitive modulus)");
  fr->add_option("--profile", f_profile, "Coefficient spaces below the conductor, e.g. 'K,V(1,y,y2),L'");
  fr->add_flag("--ideals", f_ideals, "Sweep the ideal monoid I(R) instead of the elements");
  fr->add_option("--width", f_width, "Largest K-width of ideals in an ideal sweep");
  fr->add_option("action", f_action, "invariants | atoms | verify-remark514")
      ->check(CLI::IsMember({"invariants", "atoms", "verify-remark514"}));
  add_common(fr, common);

  std::string suite;
  auto* ver = app.add_subcommand("verify", "Run a verification suite");
  ver->add_option("suite", suite, "Suite name")->required()->check(CLI::IsMember(su::suite_names()));
  add_common(ver, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  try {
    su::RunReport out;
    if (*nm) {
      const auto m = fs::numonoid::parse(generators);
      fs::numonoid::Backend b(m);
      out.suite = "nm";
      out.data["monoid"] = {{"generators", std::vector<std::int64_t>(m.generators().begin(), m.generators().end())}, {"frobenius", m.frobenius()}, {"min_delta_gcd", fs::numonoid::min_delta_gcd(m)}};
      describe_backend(out, b, common.bound.value_or(fs::numonoid::completeness_bound(m)), nm_atoms, true);
    } else if (*zs) {
      const auto g = fs::zerosum::parse(group);
      fs::zerosum::Backend b(g);
      out.suite = "zerosum";
      out.data["group"] = {{"invariant_factors", g.invariant_factors()}, {"order", g.order()}, {"davenport", b.davenport()}};
      describe_backend(out, b, common.bound.value_or(3ull * b.davenport()), zs_atoms, true);
    } else if (*qo) {
      out.suite = "quadorder";
      if (q_action == "verify-thm510") {
        auto p = collect_params(common);
        p.set("d", std::to_string(qd));
        if (norm_bound) p.set("norm_bound", std::to_string(*norm_bound));
        out = su::run_suite("thm510", p);
      } else if (q_action == "splitting") {
        const auto o = fs::quadorder::QuadOrder::make(qd, qf);
        const auto limit = static_cast<fs::quadorder::Int>(norm_bound.value_or(common.bound.value_or(50)));
        out.data["order"] = {{"d", qd}, {"f", qf}};
        auto rows = nlohmann::ordered_json::array();
        for (fs::quadorder::Int p = 2; p <= limit; ++p)
          if (fs::quadorder::is_prime(p))
            rows.push_back({{"p", p},
                            {"splitting", fs::quadorder::to_string(fs::quadorder::splitting_type(o.field(), p))},
                            {"divides_conductor", qf % p == 0}});
        out.data["rows"] = rows;
      } else {
        const auto o = fs::quadorder::QuadOrder::make(qd, qf);
        const auto bound = norm_bound.value_or(common.bound.value_or(200));
        bool cancellative = true;
        std::optional<fs::quadorder::IdealBackend> b;
        if (q_monoid == "invertible") {
          b.emplace(fs::quadorder::invertible_backend(o));
        } else if (q_monoid == "all") {
          b.emplace(fs::quadorder::all_ideals_backend(o));
          cancellative = false;
        } else if (q_monoid.rfind("local:", 0) == 0) {
          const auto p = std::stoll(q_monoid.substr(6));
          const auto ms = fs::quadorder::maximal_ideals_over(o, p);
          if (ms.empty()) throw std::invalid_argument("no maximal ideal over " + std::to_string(p));
          b.emplace(fs::quadorder::local_component_backend(o, ms.front(), true));
        } else {
          throw std::invalid_argument("unknown --monoid '" + q_monoid + "'");
        }
        out.data["order"] = {{"d", qd}, {"f", qf}};
        describe_backend(out, *b, bound, q_action == "atoms", cancellative);
      }
    } else if (*fr) {
      out.suite = "fring";
      if (f_action == "verify-remark514") {
        out = su::run_suite("remark514", collect_params(common));
      } else {
        if (f_profile.empty()) throw std::invalid_argument("--profile is required");
        auto ring = fs::fprimary::ProfileRing::parse(make_tower(f_char, f_l, f_k.value_or(f_char), f_modulus), f_profile);
        const auto bound = common.bound.value_or(2ull * ring.conductor() + 1);
        out.data["ring"] = ring.to_string();
        if (f_ideals) {
          fs::fprimary::IdealBackend b(ring, {.max_width = f_width, .principal_only = false});
          describe_backend(out, b, bound, f_action == "atoms", false);
        } else {
          fs::fprimary::ElementBackend b(ring);
          describe_backend(out, b, bound, f_action == "atoms", true);
        }
      }
    } else {
      auto p = collect_params(common);
      if (common.bound) p.set("norm_bound", std::to_string(*common.bound));
      out = su::run_suite(suite, p);
      for (const auto& kv : common.params) {
        const auto key = kv.substr(0, kv.find('='));
        if (!out.parameters.count(key)) std::cerr << "warning: suite " << suite << " ignores parameter " << key << "\n";
      }
    }
    return emit(out, common);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
}
