#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "factorsmith/suites.hpp"

using namespace factorsmith;
namespace su = factorsmith::suites;

TEST_CASE("json reports are byte-identical across reruns without timing") {
  su::Params p;
  p.set("e", "2,3");
  const auto a = su::run_suite("example55", p);
  const auto b = su::run_suite("example55", p);
  CHECK(su::to_json(a, false).dump(2) == su::to_json(b, false).dump(2));
  const auto j = su::to_json(a, false);
  CHECK(j["schema"] == su::kSchema);
  CHECK(!j.contains("timing"));
  CHECK(su::to_json(a).contains("timing"));
  CHECK(j["parameters"]["e"] == "2,3");
  CHECK(j["parameters"]["doubled"] == "true");
  CHECK(a.pass());
}

TEST_CASE("empty report gives header-only csv") {
  su::RunReport r;
  r.suite = "empty";
  CHECK(su::to_csv(r) == "suite,claim,expected,computed,tolerance,pass,witness\n");
  CHECK(r.pass());
}

TEST_CASE("csv quotes fields with commas") {
  su::RunReport r;
  r.suite = "s";
  r.verdicts.push_back({"claim, with comma", "1", "say \"2\"", "exact", false, ""});
  CHECK(su::to_csv(r) ==
        "suite,claim,expected,computed,tolerance,pass,witness\n"
        "s,\"claim, with comma\",1,\"say \"\"2\"\"\",exact,false,\n");
  CHECK(!r.pass());
}

TEST_CASE("seeded suites are reproducible and record the seed") {
  su::Params p;
  p.set("count", "5");
  p.set("seed", "7");
  const auto a = su::run_suite("mindelta", p);
  const auto b = su::run_suite("mindelta", p);
  CHECK(su::to_json(a, false) == su::to_json(b, false));
  CHECK(a.parameters.at("seed") == "7");
  CHECK(a.verdicts.size() == 5);
  p.set("seed", "8");
  CHECK(su::to_json(su::run_suite("mindelta", p), false) != su::to_json(a, false));
}

TEST_CASE("bad parameters are rejected") {
  su::Params p;
  p.set("e", "1");
  CHECK_THROWS_AS(su::run_suite("example55", p), std::invalid_argument);
  su::Params q;
  q.set("count", "many");
  CHECK_THROWS_AS(su::run_suite("mindelta", q), std::invalid_argument);
  CHECK_THROWS_AS(su::run_suite("nosuch", {}), std::invalid_argument);
}

TEST_CASE("observer sees records of every sweep") {
  std::size_t seen = 0;
  su::Params p;
  p.set("e", "2");
  p.set("doubled", "false");
  su::run_suite("example55", p, [&](const ElementRecord&) { ++seen; });
  CHECK(seen > 0);
}
