#include "doctest.h"

#include <cmath>

#include "ezdsum/factored.hpp"
#include "oracles.hpp"

using namespace ezd;

TEST_CASE("factorize basics") {
    auto t = build_prime_table(100000);
    CHECK(factorize(t, 1).factors.empty());
    auto f = factorize(t, 44100);
    REQUIRE(f.factors.size() == 4);
    CHECK(f.factors[0].p == 2); CHECK(f.factors[0].a == 2);
    CHECK(f.factors[1].p == 3); CHECK(f.factors[1].a == 2);
    CHECK(f.factors[2].p == 5); CHECK(f.factors[2].a == 2);
    CHECK(f.factors[3].p == 7); CHECK(f.factors[3].a == 2);
    CHECK(f.to_string() == "2^2*3^2*5^2*7^2");
    auto g = factorize(t, 97);
    REQUIRE(g.factors.size() == 1);
    CHECK(g.factors[0].p == 97);
    CHECK(g.factors[0].a == 1);
    CHECK_THROWS_AS(factorize(t, 0), std::domain_error);
}

TEST_CASE("factorize trial-division fallback beyond the lpf range") {
    auto t = build_prime_table(1000);
    // 999983 is prime, below limit^2
    auto f = factorize(t, 999983);
    REQUIRE(f.factors.size() == 1);
    CHECK(f.factors[0].p == 999983);
    // composite with large prime cofactor
    auto g = factorize(t, 2ull * 3 * 99991);
    REQUIRE(g.factors.size() == 3);
    CHECK(g.factors[2].p == 99991);
    // beyond limit^2 with an uncertifiable cofactor
    auto small = build_prime_table(10);
    CHECK_THROWS_AS(factorize(small, 101ull * 103 * 107), CapabilityError);
}

TEST_CASE("factorize round-trips over a range") {
    auto t = build_prime_table(100000);
    for (std::uint64_t n = 1; n <= 20000; ++n) {
        auto f = factorize(t, n);
        f.validate();
        auto v = f.value_u64();
        REQUIRE(v.has_value());
        REQUIRE(*v == n);
    }
}

TEST_CASE("guarded iterated logs") {
    CHECK(guarded_loglog(0.0) == 1.0);
    CHECK(guarded_loglog(2.0) == 1.0);
    CHECK(guarded_loglog(kEE) == 1.0);
    CHECK(guarded_loglog(std::exp(std::exp(2.0))) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(guarded_loglog(-1.0), std::domain_error);

    CHECK(guarded_logloglog(10.0) == 1.0);
    CHECK(guarded_logloglog(kEEE) == 1.0);
    // e^(e^(e^2)) overflows a double; check that point through the log-scale variant
    CHECK(guarded_logloglog_from_log(std::exp(std::exp(2.0))) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(guarded_logloglog(std::exp(std::exp(std::exp(1.1)))) == doctest::Approx(1.1).epsilon(1e-9));
    CHECK_THROWS_AS(guarded_logloglog(-0.5), std::domain_error);

    // monotone on a sample grid, branch points included
    double prev = 0.0;
    for (double x : {0.0, 1.0, 2.0, 15.0, kEE, 16.0, 100.0, 1e4, kEEE, 4e6, 1e12}) {
        double v = guarded_loglog(x);
        REQUIRE(v >= prev);
        prev = v;
    }
    prev = 0.0;
    for (double x : {0.0, 10.0, kEEE, 4e6, 1e9, 1e18, 1e300}) {
        double v = guarded_logloglog(x);
        REQUIRE(v >= prev);
        prev = v;
    }

    // log-scale variants agree with the direct ones
    for (double x : {2.0, 15.0, 16.0, 1e5, 5e6, 1e12}) {
        CHECK(guarded_loglog_from_log(std::log(x)) == doctest::Approx(guarded_loglog(x)).epsilon(1e-13));
        CHECK(guarded_logloglog_from_log(std::log(x)) == doctest::Approx(guarded_logloglog(x)).epsilon(1e-13));
    }
}

TEST_CASE("fold_divisors examples and tuple count") {
    auto t = build_prime_table(1000);
    auto one = factorize(t, 1);
    std::uint64_t visits = 0;
    double v = fold_divisors(one, 10, [&](double ld, std::uint64_t om, double iv) {
        ++visits;
        CHECK(ld == 0.0);
        CHECK(om == 0);
        CHECK(iv == 1.0);
        return 7.5;
    });
    CHECK(v == 7.5);
    CHECK(visits == 1);

    auto six = factorize(t, 6);
    double sig = fold_divisors(six, 100, [](double, std::uint64_t, double iv) { return iv; });
    CHECK(sig == doctest::Approx(2.0).epsilon(1e-14));

    auto four = factorize(t, 4);
    double phi4 = fold_divisors(four, 100, [](double ld, std::uint64_t, double iv) { return ld * iv; });
    CHECK(phi4 == doctest::Approx(std::log(2.0) / 2 + std::log(4.0) / 4).epsilon(1e-14));

    for (std::uint64_t n : {12ull, 360ull, 9973ull, 65536ull}) {
        auto f = factorize(t.limit >= n ? t : build_prime_table(n), n);
        std::uint64_t count = 0;
        fold_divisors(f, 1ull << 20, [&](double, std::uint64_t, double) { ++count; return 0.0; });
        CHECK(count == f.divisor_count());
    }
}

TEST_CASE("fold_divisors budget enforcement") {
    auto t = build_prime_table(1000);
    auto f = factorize(t, 360); // 24 divisors
    CHECK_THROWS_AS(fold_divisors(f, 23, [](double, std::uint64_t, double) { return 0.0; }),
                    BudgetExceeded);
    try {
        fold_divisors(f, 23, [](double, std::uint64_t, double) { return 0.0; });
    } catch (const BudgetExceeded& e) {
        CHECK(e.divisor_count == 24);
        CHECK(e.budget == 23);
    }
}

TEST_CASE("divisor count overflow is an explicit signal") {
    FactoredInteger big;
    auto t = build_prime_table(400);
    for (std::uint64_t p : t.primes) big.factors.push_back({p, 3}); // 4^78 divisors
    CHECK(!big.divisor_count_checked().has_value());
    CHECK_THROWS_AS(big.divisor_count(), std::overflow_error);
    CHECK_THROWS_AS(
        fold_divisors(big, 1ull << 22, [](double, std::uint64_t, double) { return 0.0; }),
        BudgetExceeded);
}

TEST_CASE("truncated fold: exact when nothing is pruned") {
    auto t = build_prime_table(1000);
    auto six = factorize(t, 6);
    auto r = fold_divisors_truncated(six, 6.0, {true, true});
    CHECK(r.tail_bound == 0.0);
    CHECK(r.value == doctest::Approx(oracle::naive_psi(6)).epsilon(1e-14));
}

TEST_CASE("truncated fold matches the pinned cap=2 example") {
    auto t = build_prime_table(1000);
    auto six = factorize(t, 6);
    // reciprocal weight: value = 1 + 1/2, tail = log6 * 1 * (2 - 1.5)
    auto r = fold_divisors_truncated(six, 2.0, {false, false});
    CHECK(r.value == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(r.tail_bound == doctest::Approx(0.895879734614027).epsilon(1e-12));
    // psi weight shares the same tail formula
    auto s = fold_divisors_truncated(six, 2.0, {true, true});
    CHECK(s.value == doctest::Approx(std::log(2.0) / 2.0).epsilon(1e-14));
    CHECK(s.tail_bound == doctest::Approx(0.895879734614027).epsilon(1e-12));
}

TEST_CASE("truncated fold encloses the exact value across caps and weights") {
    auto t = build_prime_table(3000);
    for (std::uint64_t n = 1; n <= 3000; ++n) {
        auto f = factorize(t, n);
        for (TruncWeight w : {TruncWeight{true, true}, TruncWeight{true, false},
                              TruncWeight{false, true}, TruncWeight{false, false}}) {
            double exact = fold_divisors(f, 1ull << 20, [&](double ld, std::uint64_t, double iv) {
                double x = iv;
                if (w.use_log) x *= ld;
                if (w.use_loglog) x *= guarded_loglog_from_log(ld);
                return x;
            });
            for (double cap : {1.0, 10.0, 100.0, static_cast<double>(n)}) {
                auto r = fold_divisors_truncated(f, cap, w);
                REQUIRE(exact >= r.value - 1e-9);
                REQUIRE(exact <= r.value + r.tail_bound + 1e-9);
            }
        }
    }
}

TEST_CASE("rankin refinement never loosens the tail and stays sound") {
    auto t = build_prime_table(100000);
    for (std::uint64_t n : {720720ull, 44100ull, 96577ull, 32768ull}) {
        auto f = factorize(t, n);
        double exact = fold_divisors(f, 1ull << 20, [](double ld, std::uint64_t, double iv) {
            return ld * guarded_loglog_from_log(ld) * iv;
        });
        for (double cap : {10.0, 1000.0}) {
            auto plain = fold_divisors_truncated(f, cap, {true, true});
            auto rank = fold_divisors_truncated(f, cap, {true, true}, 0.5);
            CHECK(rank.value == plain.value);
            CHECK(rank.tail_bound <= plain.tail_bound + 1e-15);
            REQUIRE(exact <= rank.value + rank.tail_bound + 1e-9);
            REQUIRE(exact >= rank.value - 1e-9);
        }
    }
    CHECK_THROWS_AS(fold_divisors_truncated(factorize(t, 12), 2.0, {true, true}, -0.1),
                    std::domain_error);
    CHECK_THROWS_AS(fold_divisors_truncated(factorize(t, 12), 0.5, {true, true}),
                    std::domain_error);
}

TEST_CASE("sigma_u closed form") {
    auto t = build_prime_table(100000);
    CHECK(sigma_u_closed(factorize(t, 6), -1.0) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(sigma_u_closed(factorize(t, 12), 0.0) == doctest::Approx(6.0).epsilon(1e-13));
    CHECK(sigma_u_closed(factorize(t, 6), 1.0) == doctest::Approx(12.0).epsilon(1e-13));
    CHECK(sigma_u_closed(factorize(t, 1), -1.0) == 1.0);
    // stability for strongly negative u: direct power-sum comparison
    auto f32 = factorize(t, 32);
    CHECK(sigma_u_closed(f32, -30.0) == doctest::Approx(1.00000000093132).epsilon(1e-13));
    // agreement with direct enumeration on a sample
    for (std::uint64_t n : {2ull, 30ull, 97ull, 360ull, 44100ull}) {
        auto f = factorize(t, n);
        for (double u : {-2.0, -1.0, -0.5, 0.3, 1.0}) {
            double direct = 0.0;
            for (std::uint64_t d : oracle::divisors_of(n))
                direct += std::pow(static_cast<double>(d), u);
            CHECK(sigma_u_closed(f, u) == doctest::Approx(direct).epsilon(1e-11));
        }
    }
}
