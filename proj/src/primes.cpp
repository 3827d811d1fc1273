#include "ezdsum/primes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ezd {

PrimeTable build_prime_table(std::uint64_t limit) {
    if (limit < 2) throw std::domain_error("prime table limit must be >= 2");
    PrimeTable t;
    t.limit = limit;
    t.lpf.assign(limit + 1, 0);
    // linear sieve: each composite crossed off exactly once by its least prime factor
    for (std::uint64_t m = 2; m <= limit; ++m) {
        if (t.lpf[m] == 0) {
            t.lpf[m] = static_cast<std::uint32_t>(m);
            t.primes.push_back(m);
        }
        for (std::uint64_t p : t.primes) {
            if (p > t.lpf[m] || p * m > limit) break;
            t.lpf[p * m] = static_cast<std::uint32_t>(p);
        }
    }
    return t;
}

std::uint64_t nth_prime(const PrimeTable& t, std::uint64_t i) {
    if (i == 0 || i > t.primes.size())
        throw std::out_of_range("prime index " + std::to_string(i) + " outside table (" +
                                std::to_string(t.primes.size()) + " primes)");
    return t.primes[i - 1];
}

std::vector<std::uint64_t> primes_below(const PrimeTable& t, double x) {
    if (x > static_cast<double>(t.limit) + 1.0)
        throw std::out_of_range("primes_below: x exceeds table limit");
    std::vector<std::uint64_t> out;
    for (std::uint64_t p : t.primes) {
        if (static_cast<double>(p) >= x) break;
        out.push_back(p);
    }
    return out;
}

double mertens_product(const PrimeTable& t, double x) {
    if (x < 2.0 || x > static_cast<double>(t.limit))
        throw std::out_of_range("mertens_product: x outside [2, limit]");
    double logsum = 0.0;
    for (std::uint64_t p : t.primes) {
        if (static_cast<double>(p) > x) break;
        logsum -= std::log1p(-1.0 / static_cast<double>(p));
    }
    return std::exp(logsum);
}

double chebyshev_theta(const PrimeTable& t, double x) {
    if (x > static_cast<double>(t.limit))
        throw std::out_of_range("chebyshev_theta: x exceeds table limit");
    double s = 0.0;
    for (std::uint64_t p : t.primes) {
        if (static_cast<double>(p) > x) break;
        s += std::log(static_cast<double>(p));
    }
    return s;
}

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

} // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // this base set is deterministic for all 64-bit inputs
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

} // namespace ezd
