#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "ezdsum/primes.hpp"

using namespace ezd;

namespace {
bool slow_is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}
} // namespace

TEST_CASE("small tables") {
    auto t = build_prime_table(10);
    CHECK(t.primes == std::vector<std::uint64_t>{2, 3, 5, 7});
    auto t2 = build_prime_table(2);
    CHECK(t2.primes == std::vector<std::uint64_t>{2});
    CHECK_THROWS_AS(build_prime_table(1), std::domain_error);
}

TEST_CASE("pi(1e4) and agreement with direct scan") {
    auto t = build_prime_table(10000);
    CHECK(t.primes.size() == 1229);
    std::size_t idx = 0;
    for (std::uint64_t n = 2; n <= 10000; ++n) {
        if (slow_is_prime(n)) {
            REQUIRE(idx < t.primes.size());
            CHECK(t.primes[idx] == n);
            ++idx;
        }
    }
    CHECK(idx == t.primes.size());
}

TEST_CASE("lpf invariants and refactorization") {
    auto t = build_prime_table(100000);
    for (std::uint64_t m = 2; m <= 100000; ++m) {
        std::uint64_t p = t.lpf[m];
        REQUIRE(p >= 2);
        REQUIRE(m % p == 0);
        // rebuild m from lpf chain
        std::uint64_t rest = m, prod = 1;
        while (rest > 1) {
            prod *= t.lpf[rest];
            rest /= t.lpf[rest];
        }
        REQUIRE(prod == m);
    }
}

TEST_CASE("nth_prime values and index errors") {
    auto t = build_prime_table(1000);
    CHECK(nth_prime(t, 1) == 2);
    CHECK(nth_prime(t, 6) == 13);
    CHECK(nth_prime(t, 25) == 97);
    CHECK_THROWS_AS(nth_prime(t, 0), std::out_of_range);
    CHECK_THROWS_AS(nth_prime(t, t.primes.size() + 1), std::out_of_range);
}

TEST_CASE("nth_prime bracketing bounds over the full table") {
    // p(i) >= max(i log i, 2) for i >= 1; p(i) <= i(log i + log log i) for i >= 6
    auto t = build_prime_table(1000000);
    CHECK(6.0 * std::log(6.0) == doctest::Approx(10.7506).epsilon(1e-3));
    CHECK(6.0 * (std::log(6.0) + std::log(std::log(6.0))) == doctest::Approx(14.2513).epsilon(1e-3));
    for (std::size_t i = 1; i <= t.primes.size(); ++i) {
        double p = static_cast<double>(t.primes[i - 1]);
        double di = static_cast<double>(i);
        REQUIRE(p >= std::max(di * std::log(di), 2.0));
        if (i >= 6) REQUIRE(p <= di * (std::log(di) + std::log(std::log(di))));
    }
}

TEST_CASE("primes_below") {
    auto t = build_prime_table(100);
    CHECK(primes_below(t, std::exp(1.0)) == std::vector<std::uint64_t>{2});
    CHECK(primes_below(t, std::exp(2.0)) == std::vector<std::uint64_t>{2, 3, 5, 7});
    CHECK(primes_below(t, 2.0).empty());
    CHECK(primes_below(t, 8.0) == std::vector<std::uint64_t>{2, 3, 5, 7}); // strict: 7 < 8
    CHECK_THROWS_AS(primes_below(t, 1000.0), std::out_of_range);
}

TEST_CASE("mertens product") {
    auto t = build_prime_table(1000000);
    CHECK(mertens_product(t, 2.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(mertens_product(t, 10.0) == doctest::Approx(4.375).epsilon(1e-12));
    // corridor against e^gamma log x
    double eg = std::exp(0.57721566490153286061);
    for (double x : {100.0, 1e3, 1e4, 1e5, 1e6}) {
        double q = mertens_product(t, x) / (eg * std::log(x));
        REQUIRE(q >= 0.8);
        REQUIRE(q <= 1.2);
        // empirically much tighter at these sizes
        REQUIRE(q >= 0.95);
        REQUIRE(q <= 1.1);
    }
    CHECK_THROWS_AS(mertens_product(t, 1.5), std::out_of_range);
}

TEST_CASE("chebyshev theta") {
    auto t = build_prime_table(100000);
    CHECK(chebyshev_theta(t, 2.0) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(chebyshev_theta(t, 10.0) == doctest::Approx(std::log(210.0)).epsilon(1e-12));
    double th = chebyshev_theta(t, 1e5);
    CHECK(th / 1e5 > 0.9);
    CHECK(th / 1e5 < 1.1);
}

TEST_CASE("is_prime_u64 agrees with trial division") {
    for (std::uint64_t n = 0; n <= 10000; ++n) CHECK(is_prime_u64(n) == slow_is_prime(n));
    CHECK(is_prime_u64(2147483647ull));        // 2^31 - 1
    CHECK(!is_prime_u64(2147483647ull * 3));
    CHECK(is_prime_u64(1000000007ull));
}
