#include "ezdsum/factored.hpp"

#include <algorithm>
#include <cmath>

namespace ezd {

std::string FactoredInteger::to_string() const {
    if (factors.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) s += '*';
        s += std::to_string(factors[i].p);
        if (factors[i].a > 1) {
            s += '^';
            s += std::to_string(factors[i].a);
        }
    }
    return s;
}

void FactoredInteger::validate() const {
    std::uint64_t prev = 0;
    for (const auto& f : factors) {
        if (f.p <= prev) throw std::domain_error("factor primes must be strictly increasing");
        if (f.a == 0) throw std::domain_error("factor exponent must be >= 1");
        if (!is_prime_u64(f.p)) throw std::domain_error(std::to_string(f.p) + " is not prime");
        prev = f.p;
    }
}

FactoredInteger factorize(const PrimeTable& t, std::uint64_t n) {
    if (n == 0) throw std::domain_error("factorize: n must be >= 1");
    FactoredInteger f;
    if (n == 1) return f;

    if (n <= t.limit) {
        // lpf path: O(log n) factor extraction
        while (n > 1) {
            std::uint64_t p = t.lpf[n];
            std::uint32_t a = 0;
            while (n % p == 0) { n /= p; ++a; }
            f.factors.push_back({p, a});
        }
        return f;
    }

    // trial-division fallback over table primes, valid for n <= limit^2
    std::uint64_t m = n;
    for (std::uint64_t p : t.primes) {
        if (p * p > m) break;
        if (m % p == 0) {
            std::uint32_t a = 0;
            while (m % p == 0) { m /= p; ++a; }
            f.factors.push_back({p, a});
        }
    }
    if (m > 1) {
        // no table prime <= sqrt(m) divides m, so m is prime iff sqrt(m) <= limit
        if (static_cast<unsigned __int128>(t.limit) * t.limit < m)
            throw CapabilityError(m, t.limit);
        f.factors.push_back({m, 1});
    }
    return f;
}

double guarded_loglog(double x) {
    if (x < 0.0 || std::isnan(x)) throw std::domain_error("guarded_loglog: x must be >= 0");
    if (x <= kEE) return 1.0;
    return std::log(std::log(x));
}

double guarded_logloglog(double x) {
    if (x < 0.0 || std::isnan(x)) throw std::domain_error("guarded_logloglog: x must be >= 0");
    if (x <= kEEE) return 1.0;
    return std::log(std::log(std::log(x)));
}

namespace {

struct TruncState {
    double log_cap;
    double value = 0.0;
    double recip = 0.0;
    bool pruned = false;
    bool use_log, use_loglog;
    const FactoredInteger* n;
    std::vector<double> logp;
};

// recursion over factor index; exponents ascend so the first pruned exponent
// ends the level (divisors only grow)
void trunc_walk(TruncState& st, std::size_t i, double log_d, double inv_d) {
    if (i == st.n->factors.size()) {
        double w = inv_d;
        if (st.use_log) w *= log_d; // d=1 contributes 0 via log d = 0
        if (st.use_loglog) w *= guarded_loglog_from_log(log_d);
        st.value += w;
        st.recip += inv_d;
        return;
    }
    double ld = log_d, iv = inv_d;
    const auto& f = st.n->factors[i];
    for (std::uint32_t e = 0; e <= f.a; ++e) {
        if (e > 0) {
            ld += st.logp[i];
            iv /= static_cast<double>(f.p);
            if (ld > st.log_cap + 1e-12) { st.pruned = true; break; }
        }
        trunc_walk(st, i + 1, ld, iv);
    }
}

} // namespace

ApproxValue fold_divisors_truncated(const FactoredInteger& n, double cap, TruncWeight w,
                                    std::optional<double> rankin_delta) {
    if (cap < 1.0) throw std::domain_error("fold_divisors_truncated: cap must be >= 1");
    if (rankin_delta && *rankin_delta <= 0.0)
        throw std::domain_error("fold_divisors_truncated: rankin delta must be > 0");

    TruncState st;
    st.log_cap = std::log(cap);
    st.use_log = w.use_log;
    st.use_loglog = w.use_loglog;
    st.n = &n;
    st.logp.reserve(n.factors.size());
    for (const auto& f : n.factors) st.logp.push_back(std::log(static_cast<double>(f.p)));

    trunc_walk(st, 0, 0.0, 1.0);

    ApproxValue out;
    out.value = st.value;
    if (!st.pruned) return out; // every divisor visited: exact, tail 0

    double log_n = n.log_of();
    double gll_n = guarded_loglog_from_log(log_n);
    // uniform per-term factor; without the log part the bound needs
    // max(log n, 1) to stay valid for log n < 1
    double factor = (w.use_log ? log_n : std::max(log_n, 1.0)) * gll_n;
    double missing = sigma_u_closed(n, -1.0) - st.recip;
    double tail = factor * std::max(missing, 0.0);
    if (rankin_delta) {
        double d = *rankin_delta;
        double rank = std::exp(-d * st.log_cap) * factor * sigma_u_closed(n, d - 1.0);
        tail = std::min(tail, rank);
    }
    out.tail_bound = tail;
    return out;
}

double sigma_u_closed(const FactoredInteger& n, double u) {
    double prod = 1.0;
    for (const auto& f : n.factors) {
        if (u == 0.0) {
            prod *= static_cast<double>(f.a) + 1.0;
            continue;
        }
        double t = u * std::log(static_cast<double>(f.p));
        // sum_{mu=0}^{a} e^{t mu} = expm1((a+1)t)/expm1(t), stable for both signs
        prod *= std::expm1((f.a + 1.0) * t) / std::expm1(t);
    }
    return prod;
}

} // namespace ezd
