#include "doctest.h"

#include <set>
#include <stdexcept>

#include "ezdsum/suites.hpp"

using namespace ezd;

static SuiteOptions fast_opts() {
    SuiteOptions o;
    o.max = 3000;
    o.trials = 40;
    o.seed = 7;
    o.table_limit = 1000000;
    return o;
}

TEST_CASE("identity suite is clean and deterministic") {
    const auto a = run_suite("identities", fast_opts());
    CHECK(a.suite == "identities");
    CHECK(a.checks.size() == 6);
    CHECK(a.total_violations() == 0);
    for (const auto& c : a.checks) {
        CHECK(c.points_checked > 0);
        CHECK(c.worst_margin >= 0.0);
    }

    const auto b = run_suite("identities", fast_opts());
    REQUIRE(b.checks.size() == a.checks.size());
    for (std::size_t i = 0; i < a.checks.size(); ++i) {
        CHECK(a.checks[i].lemma_id == b.checks[i].lemma_id);
        CHECK(a.checks[i].grid_description == b.checks[i].grid_description);
        CHECK(a.checks[i].points_checked == b.checks[i].points_checked);
        CHECK(a.checks[i].worst_margin == b.checks[i].worst_margin);  // bitwise
    }
}

TEST_CASE("gcd suite is clean") {
    const auto r = run_suite("gcd", fast_opts());
    CHECK(r.checks.size() == 4);
    CHECK(r.total_violations() == 0);
    std::set<std::string> ids;
    for (const auto& c : r.checks) ids.insert(c.lemma_id);
    CHECK(ids.count("cs_majorant") == 1);
    CHECK(ids.count("empirical_sharpness") == 1);
}

TEST_CASE("lemma suite reports exactly the known-bad bound") {
    const auto r = run_suite("lemmas", fast_opts());
    CHECK(r.checks.size() == 17);
    CHECK(r.total_violations() > 0);
    for (const auto& c : r.checks) {
        if (c.lemma_id == "phi2_lower") {
            CHECK(c.violations > 0);
            CHECK(c.worst_margin < 0.0);
        } else {
            CHECK(c.violations == 0);
        }
    }
}

TEST_CASE("the combined suite concatenates all three") {
    auto o = fast_opts();
    o.max = 1000;
    o.trials = 10;
    const auto all = run_suite("all", o);
    CHECK(all.suite == "all");
    CHECK(all.checks.size() == 6 + 17 + 4);
    CHECK_THROWS_AS(run_suite("bogus", o), std::invalid_argument);
}
