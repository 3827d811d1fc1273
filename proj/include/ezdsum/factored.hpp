#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ezdsum/errors.hpp"
#include "ezdsum/primes.hpp"

namespace ezd {

struct PrimePower {
    std::uint64_t p;
    std::uint32_t a;
};

// n = prod p_i^{a_i}, primes strictly increasing, exponents >= 1.
// Empty factor list represents n = 1. Divisors are never materialized as
// integers: all consumers work from (log d, Omega(d), 1/d) built incrementally
// from exponent tuples, so n with log n ~ 1e3 is fine.
struct FactoredInteger {
    std::vector<PrimePower> factors;

    double log_of() const {
        double s = 0.0;
        for (const auto& f : factors) s += f.a * std::log(static_cast<double>(f.p));
        return s;
    }

    // prod (a_i + 1) in checked arithmetic; nullopt signals 64-bit overflow
    std::optional<std::uint64_t> divisor_count_checked() const {
        std::uint64_t c = 1;
        for (const auto& f : factors) {
            if (__builtin_mul_overflow(c, static_cast<std::uint64_t>(f.a) + 1, &c))
                return std::nullopt;
        }
        return c;
    }

    std::uint64_t divisor_count() const {
        auto c = divisor_count_checked();
        if (!c) throw std::overflow_error("divisor count overflows 64 bits");
        return *c;
    }

    // the integer itself when it fits in 64 bits
    std::optional<std::uint64_t> value_u64() const {
        std::uint64_t v = 1;
        for (const auto& f : factors)
            for (std::uint32_t k = 0; k < f.a; ++k)
                if (__builtin_mul_overflow(v, f.p, &v)) return std::nullopt;
        return v;
    }

    std::string to_string() const; // "2^2*3*5" style

    void validate() const; // throws std::domain_error on broken invariants
};

FactoredInteger factorize(const PrimeTable& t, std::uint64_t n);

// iterated-log conventions: log log x := 1 for 0 <= x <= e^e,
// log log log x := 1 for 0 <= x <= e^(e^e). Both continuous at the branch.
inline const double kEE = std::exp(std::exp(1.0));        // e^e = 15.1542...
inline const double kEEE = std::exp(std::exp(std::exp(1.0))); // e^(e^e) = 3.8142e6

double guarded_loglog(double x);
double guarded_logloglog(double x);

// same conventions applied to a quantity already in log scale (L = log x)
inline double guarded_loglog_from_log(double L) {
    return L <= std::exp(1.0) ? 1.0 : std::log(L);
}
inline double guarded_logloglog_from_log(double L) {
    return L <= kEE ? 1.0 : std::log(std::log(L));
}

// exact full enumeration over divisor exponent tuples, odometer order with the
// first factor's exponent moving fastest. Each tuple's (log d, Omega d, 1/d)
// is recomputed from per-prime power tables, so the accumulation is a plain
// left-to-right double sum in a fixed order: bit-reproducible per build.
inline constexpr std::uint64_t kDefaultBudget = 1ull << 22;

template <class W>
double fold_divisors(const FactoredInteger& n, std::uint64_t budget, W&& weight) {
    auto dc = n.divisor_count_checked();
    if (!dc) throw BudgetExceeded(UINT64_MAX, budget);
    if (*dc > budget) throw BudgetExceeded(*dc, budget);

    const std::size_t r = n.factors.size();
    std::vector<double> logp(r);
    std::vector<std::vector<double>> invpow(r);
    for (std::size_t i = 0; i < r; ++i) {
        logp[i] = std::log(static_cast<double>(n.factors[i].p));
        invpow[i].resize(n.factors[i].a + 1);
        double ip = 1.0;
        for (std::uint32_t k = 0; k <= n.factors[i].a; ++k) {
            invpow[i][k] = ip;
            ip /= static_cast<double>(n.factors[i].p);
        }
    }

    std::vector<std::uint32_t> mu(r, 0);
    double acc = 0.0;
    for (std::uint64_t step = 0; step < *dc; ++step) {
        double log_d = 0.0, inv_d = 1.0;
        std::uint64_t omega = 0;
        for (std::size_t i = 0; i < r; ++i) {
            log_d += mu[i] * logp[i];
            inv_d *= invpow[i][mu[i]];
            omega += mu[i];
        }
        acc += weight(log_d, omega, inv_d);
        for (std::size_t i = 0; i < r; ++i) {
            if (mu[i] < n.factors[i].a) { ++mu[i]; break; }
            mu[i] = 0;
        }
    }
    return acc;
}

// encloses a divisor sum when full enumeration is infeasible:
// the true value lies in [value, value + tail_bound]
struct ApproxValue {
    double value = 0.0;
    double tail_bound = 0.0;
};

// the truncated walk only supports the nonnegative family
// w(d) = (log d)^a (guarded_loglog d)^b / d with a, b in {0,1}
struct TruncWeight {
    bool use_log = true;     // a
    bool use_loglog = true;  // b
};

// DFS over exponent tuples in log scale, pruning branches whose partial
// product already exceeds cap. tail_bound is the uniform bound
// (log n)(guarded_loglog n) * (sigma_{-1}(n) - sum_{d<=cap} 1/d); when the
// optional Rankin exponent delta is given, the alternative bound
// cap^{-delta} (log n)(guarded_loglog n) sigma_{delta-1}(n) is computed and
// the smaller of the two is used.
ApproxValue fold_divisors_truncated(const FactoredInteger& n, double cap, TruncWeight w,
                                    std::optional<double> rankin_delta = std::nullopt);

// sigma_u(n) = prod_i sum_{mu=0}^{a_i} p_i^{u mu}, via expm1 for stability
double sigma_u_closed(const FactoredInteger& n, double u);

} // namespace ezd
