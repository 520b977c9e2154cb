#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "pg3/audit.hpp"
#include "pg3/charax.hpp"
#include "pg3/quadric.hpp"

using namespace pg3;

TEST_CASE("registry covers the full list") {
    const auto& names = audit_registry_names();
    CHECK(names.size() == 31);
    for (const char* required :
         {"lem-plane-point", "both-plane-types-exist", "cor-plane", "cor-plane-1", "size-a_pi",
          "cor-pole", "points-l", "cor-arc", "recall", "lem-oval", "size-alpha-beta", "lem-black",
          "coro-lem-black", "lem-black-secant", "eq-4", "lem-black-tangent", "eq-5", "eq-6",
          "0-1-2-q+1", "lem-size-H", "bose-burton-plane", "exis-line", "to-use", "pole-inters",
          "black-line-3", "black-line-2", "GQ-axioms", "two-rulings", "hyperbolic", "final-lemma",
          "size-S-H"})
        CHECK(std::find(names.begin(), names.end(), required) != names.end());
}

TEST_CASE("default families pass every check at q=3") {
    const Field f(3, 1);
    const Geometry g(f);
    const auto families = default_audit_families(g, 10);
    CHECK(families.size() == 11);
    const auto checks = run_audit(families);
    CHECK(checks.size() == audit_registry_names().size());
    for (const auto& c : checks) {
        CAPTURE(c.name);
        CHECK(c.pass);
        CHECK(c.cases_checked > 0);
        CHECK(c.counterexample.empty());
        CHECK(!c.sampled);
    }
    CHECK(audit_all_pass(checks));
}

TEST_CASE("a swapped family fails with a replayable counterexample") {
    const Field f(3, 1);
    const Geometry g(f);
    const Quadric quad = Quadric::standard(g);
    const LineFamily fam(g, quad.secant_line_set());
    const LineFamily broken = perturb_family(fam, 1, 7);

    const auto checks = run_audit({broken});
    CHECK(!audit_all_pass(checks));
    bool replayed = false;
    for (const auto& c : checks) {
        if (c.pass) continue;
        CHECK(!c.detail.empty());
        const std::string trace = replay(c, broken);
        CHECK(trace.find(c.name) != std::string::npos);
        CHECK(trace.find("violated:") != std::string::npos);
        replayed = true;
    }
    CHECK(replayed);
}

TEST_CASE("replay refuses passing checks") {
    const Field f(3, 1);
    const Geometry g(f);
    const auto families = default_audit_families(g, 0);
    const auto checks = run_audit(families);
    REQUIRE(!checks.empty());
    REQUIRE(checks.front().pass);
    CHECK_THROWS_AS(replay(checks.front(), families.front()), pg3::NotAFailure);
}

TEST_CASE("run_audit input validation") {
    CHECK_THROWS_AS(run_audit({}), pg3::GeometryMissing);
}

TEST_CASE("audit json carries one record per check") {
    const Field f(3, 1);
    const Geometry g(f);
    const auto checks = run_audit(default_audit_families(g, 1));
    const std::string j = audit_json(checks);
    CHECK(j.find("\"name\": \"lem-plane-point\"") != std::string::npos);
    CHECK(j.find("\"status\": \"pass\"") != std::string::npos);
    CHECK(j.find("\"cases_checked\"") != std::string::npos);
}

TEST_CASE("audit is deterministic") {
    const Field f(3, 1);
    const Geometry g(f);
    const auto a = audit_json(run_audit(default_audit_families(g, 3)));
    const auto b = audit_json(run_audit(default_audit_families(g, 3)));
    CHECK(a == b);
}
