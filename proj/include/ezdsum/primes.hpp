#pragma once

#include <cstdint>
#include <vector>

namespace ezd {

// linear sieve product: sorted primes plus least-prime-factor array for fast
// factorization of every n <= limit. Immutable after construction; safe to
// share across threads. Default documented cap: 1e8 (memory bound, ~400MB lpf).
struct PrimeTable {
    std::uint64_t limit = 0;
    std::vector<std::uint64_t> primes;
    std::vector<std::uint32_t> lpf; // lpf[m] = least prime factor of m, lpf[0]=lpf[1]=0
};

PrimeTable build_prime_table(std::uint64_t limit);

// 1-based: nth_prime(t, 1) == 2. Throws std::out_of_range past the table.
std::uint64_t nth_prime(const PrimeTable& t, std::uint64_t i);

// all primes strictly below x, ascending. Throws std::out_of_range if x > limit.
std::vector<std::uint64_t> primes_below(const PrimeTable& t, double x);

// prod_{p<=x} (1-1/p)^-1, accumulated in log space
double mertens_product(const PrimeTable& t, double x);

// theta(x) = sum_{p<=x} log p
double chebyshev_theta(const PrimeTable& t, double x);

// deterministic Miller-Rabin, valid for all 64-bit n
bool is_prime_u64(std::uint64_t n);

} // namespace ezd
