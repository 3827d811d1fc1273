#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "ezdsum/extremal.hpp"
#include "oracles.hpp"

using namespace ezd;

static const PrimeTable& table() {
    static PrimeTable t = build_prime_table(1000000);
    return t;
}

TEST_CASE("extremal integers n_j") {
    const auto n1 = build_nj(table(), 1);
    REQUIRE(n1.factors.size() == 1);
    CHECK(n1.factors[0].p == 2);
    CHECK(n1.factors[0].a == 1);

    const auto n2 = build_nj(table(), 2);
    CHECK(n2.value_u64().value() == 44100);
    REQUIRE(n2.factors.size() == 4);
    for (const auto& f : n2.factors) CHECK(f.a == 2);

    const auto n3 = build_nj(table(), 3);
    CHECK(n3.factors.size() == 8);  // primes below e^3 ~ 20.09
    CHECK(n3.factors.back().p == 19);
    CHECK(n3.divisor_count_checked().value() == 65536);

    for (unsigned j = 1; j <= 8; ++j) {
        const auto nj = build_nj(table(), j);
        const double expect =
            static_cast<double>(j) *
            chebyshev_theta(table(), std::exp(static_cast<double>(j)));
        CHECK(std::abs(nj.log_of() - expect) <= 1e-9 * std::max(1.0, expect));
    }

    CHECK_THROWS_AS(build_nj(table(), 0), std::domain_error);
    const PrimeTable tiny = build_prime_table(50);
    CHECK_THROWS_AS(build_nj(tiny, 5), std::out_of_range);  // e^5 ~ 148 > 50
}

TEST_CASE("distant prime sequences") {
    const auto a = build_distant_sequence(table(), 3, 3);
    REQUIRE(a.factors.size() == 3);
    CHECK(a.factors[0].p == 3);
    CHECK(a.factors[1].p == 5);
    CHECK(a.factors[2].p == 17);
    CHECK(davenport_w(a) == doctest::Approx(0.854751287183418).epsilon(1e-13));

    const auto b = build_distant_sequence(table(), 2, 2);
    CHECK(b.factors[0].p == 2);
    CHECK(b.factors[1].p == 3);

    const auto c = build_distant_sequence(table(), 2, 4);
    REQUIRE(c.factors.size() == 4);
    CHECK(c.factors[2].p == 7);
    CHECK(c.factors[3].p == 43);
    CHECK(davenport_w(c) == doctest::Approx(1.07823462078584).epsilon(1e-13));

    // constructive postcondition: p_1...p_s <= p_{s+1} for every prefix
    for (std::uint64_t p0 : {2ull, 3ull, 5ull, 11ull, 97ull}) {
        for (std::size_t r = 1; r <= 5; ++r) {
            FactoredInteger seq;
            try {
                seq = build_distant_sequence(table(), p0, r);
            } catch (const std::out_of_range&) {
                break;
            }
            unsigned __int128 prod = 1;
            for (std::size_t s = 0; s + 1 < seq.factors.size(); ++s) {
                prod *= seq.factors[s].p;
                CHECK(prod <= seq.factors[s + 1].p);
            }
            seq.validate();
        }
    }

    CHECK_THROWS_AS(build_distant_sequence(table(), 4, 2), std::invalid_argument);
    CHECK_THROWS_AS(build_distant_sequence(table(), 3, 0), std::domain_error);
    // 2*3*7*43*1811 = 3270666 outruns a 10^6 table at r = 6
    CHECK_THROWS_AS(build_distant_sequence(table(), 2, 6), std::out_of_range);
}

TEST_CASE("trend rows for the closed-form ratio") {
    const auto rows = trend_report(table(), 1, 4, parse_stat("ez_ratio"), 1e6);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].j == 1);
    CHECK(rows[0].log_n == doctest::Approx(std::log(2.0)).epsilon(1e-13));
    CHECK(rows[0].ratio == doctest::Approx(0.34657359028).epsilon(1e-10));
    CHECK(rows[1].ratio == doctest::Approx(0.967014667814).epsilon(1e-10));
    CHECK(rows[2].ratio == doctest::Approx(0.90184385534).epsilon(1e-10));
    CHECK(rows[3].ratio == doctest::Approx(0.905984307554).epsilon(1e-10));
    CHECK(rows[3].log_n == doctest::Approx(179.72204538).epsilon(1e-9));
    for (const auto& r : rows) CHECK(r.width == 0.0);
    // the j = 3 dip is real: the sequence is NOT monotone this early
    CHECK(rows[2].ratio < rows[1].ratio);
    CHECK_THROWS_AS(trend_report(table(), 0, 4, parse_stat("ez_ratio"), 1e6),
                    std::invalid_argument);
    CHECK_THROWS_AS(trend_report(table(), 3, 2, parse_stat("ez_ratio"), 1e6),
                    std::invalid_argument);
}

TEST_CASE("trend rows fall back to the truncated enclosure") {
    // divisor count 5^16 forces truncation for the loglog-weighted sum at j = 4
    const auto rows = trend_report(table(), 4, 4, parse_stat("psi_ratio"), 1e6);
    REQUIRE(rows.size() == 1);
    const auto f = build_nj(table(), 4);
    const double norm = stat_normalizer(f, parse_stat("psi_ratio"));
    CHECK(rows[0].width > 0.0);
    CHECK(rows[0].ratio * norm == doctest::Approx(39.6402487413).epsilon(1e-6));
    CHECK(rows[0].width * norm == doctest::Approx(24.0264543513).epsilon(1e-6));

    // small j stays exact
    const auto small = trend_report(table(), 1, 2, parse_stat("psi_ratio"), 1e6);
    CHECK(small[0].width == 0.0);
    CHECK(small[0].ratio == doctest::Approx(0.34657359028).epsilon(1e-10));
}

TEST_CASE("champion search against the sieve oracle") {
    const std::uint64_t nmax = 100000;
    const auto ez = champion_search(table(), nmax, parse_stat("ez_ratio"));
    const auto oracle_ez = oracle::sieve_champions(nmax, 0);
    REQUIRE(ez.records.size() == oracle_ez.size());
    for (std::size_t i = 0; i < ez.records.size(); ++i) {
        CHECK(ez.records[i].n == oracle_ez[i].n);
        CHECK(ez.records[i].ratio == doctest::Approx(oracle_ez[i].ratio).epsilon(1e-10));
        CHECK(ez.records[i].index == i);
        CHECK(ez.records[i].ratio ==
              doctest::Approx(ez.records[i].value / ez.records[i].normalizer)
                  .epsilon(1e-12));
    }
    CHECK(ez.undecided.empty());

    // pinned list: the records below 10^5
    REQUIRE(ez.records.size() == 5);
    const std::uint64_t ns[] = {2, 3, 4, 6, 12};
    const double ratios[] = {0.34657359028, 0.366204096223, 0.69314718056,
                             1.01140426471, 1.56505340914};
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(ez.records[i].n == ns[i]);
        CHECK(ez.records[i].ratio == doctest::Approx(ratios[i]).epsilon(1e-10));
    }
    CHECK(ez.records.back().factorization == "2^2*3");

    const auto psi = champion_search(table(), nmax, parse_stat("psi_ratio"));
    const auto oracle_psi = oracle::sieve_champions(nmax, 1);
    REQUIRE(psi.records.size() == oracle_psi.size());
    for (std::size_t i = 0; i < psi.records.size(); ++i) {
        CHECK(psi.records[i].n == oracle_psi[i].n);
        CHECK(psi.records[i].ratio == doctest::Approx(oracle_psi[i].ratio).epsilon(1e-10));
    }
    // ratios strictly increase along the stream
    for (std::size_t i = 1; i < psi.records.size(); ++i)
        CHECK(psi.records[i].ratio > psi.records[i - 1].ratio);
}

TEST_CASE("champion search determinism and prefix extension") {
    const auto r1 = champion_search(table(), 50000, parse_stat("ez_ratio"), kDefaultBudget, 1);
    const auto r2 = champion_search(table(), 50000, parse_stat("ez_ratio"), kDefaultBudget, 2);
    const auto r4 = champion_search(table(), 50000, parse_stat("ez_ratio"), kDefaultBudget, 4);
    REQUIRE(r1.records.size() == r2.records.size());
    REQUIRE(r1.records.size() == r4.records.size());
    for (std::size_t i = 0; i < r1.records.size(); ++i) {
        CHECK(r1.records[i].n == r2.records[i].n);
        CHECK(r1.records[i].ratio == r2.records[i].ratio);  // bitwise
        CHECK(r1.records[i].n == r4.records[i].n);
        CHECK(r1.records[i].ratio == r4.records[i].ratio);
    }
    CHECK(r1.undecided == r2.undecided);
    CHECK(r1.undecided == r4.undecided);

    // a longer run extends the shorter one's records without rewriting them
    const auto longer = champion_search(table(), 100000, parse_stat("ez_ratio"));
    REQUIRE(longer.records.size() >= r1.records.size());
    for (std::size_t i = 0; i < r1.records.size(); ++i) {
        CHECK(longer.records[i].n == r1.records[i].n);
        CHECK(longer.records[i].ratio == r1.records[i].ratio);
    }
}

TEST_CASE("champion search under a starved budget stays conservative") {
    // budget 16 forces the truncated path on every n with more than 16 divisors
    const auto exact = champion_search(table(), 2000, parse_stat("psi_ratio"));
    const auto starved =
        champion_search(table(), 2000, parse_stat("psi_ratio"), 16, 1, 10.0);
    CHECK(!starved.records.empty());
    CHECK(!starved.undecided.empty());
    // no true record is silently lost: each shows up as a record or undecided
    for (const auto& rec : exact.records) {
        bool found = false;
        for (const auto& r : starved.records)
            if (r.n == rec.n) found = true;
        for (std::uint64_t u : starved.undecided)
            if (u == rec.n) found = true;
        CHECK(found);
    }
    // deterministic too
    const auto again =
        champion_search(table(), 2000, parse_stat("psi_ratio"), 16, 3, 10.0);
    CHECK(starved.records.size() == again.records.size());
    CHECK(starved.undecided == again.undecided);
}

TEST_CASE("distant-prime growth keeps w below the guarded triple log") {
    const auto rep = davenport_distant_check(table(), 3, 8);
    CHECK(rep.violations == 0);
    CHECK(rep.worst_margin >= 0.0);
    CHECK(rep.points_checked > 20);
    CHECK(rep.grid_description.find("smallest violation-free start: 3") !=
          std::string::npos);
    CHECK(rep.grid_description.find("p_start=2,r=4") != std::string::npos);

    // starting at 2 the bound genuinely fails before the table runs out
    const auto loose = davenport_distant_check(table(), 2, 8);
    CHECK(loose.violations == 2);
    CHECK(loose.worst_margin == doctest::Approx(-0.0823768).epsilon(1e-4));
}
