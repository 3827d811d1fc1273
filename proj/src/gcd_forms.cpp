#include "ezdsum/gcd_forms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ezdsum/errors.hpp"
#include "ezdsum/rng.hpp"

namespace ezd {

namespace {

void require_s(double s) {
    if (!(s > 0.0) || !(s <= 1.0)) throw std::domain_error("s must lie in (0, 1]");
}

void require_eta(double eta) {
    if (!(eta > 1.0)) throw std::domain_error("eta must exceed 1");
}

std::vector<std::uint64_t> divisors_by_trial(std::uint64_t n) {
    if (n > 1000000000000ull) throw BudgetExceeded(n, 1000000000000ull);
    std::vector<std::uint64_t> d;
    for (std::uint64_t i = 1; i * i <= n; ++i) {
        if (n % i) continue;
        d.push_back(i);
        if (i != n / i) d.push_back(n / i);
    }
    std::sort(d.begin(), d.end());
    return d;
}

std::vector<std::uint64_t> prime_support(std::uint64_t n) {
    std::vector<std::uint64_t> ps;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        ps.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

// J_{2s}(m) = m^{2s} prod_{p|m} (1 - p^{-2s})
double jordan_real(std::uint64_t m, double two_s) {
    double v = std::pow(static_cast<double>(m), two_s);
    for (std::uint64_t p : prime_support(m))
        v *= 1.0 - std::pow(static_cast<double>(p), -two_s);
    return v;
}

// sum_{t|u} t (log t)(loglog t) with the guarded inner log; 0 at u = 1
double tll_sum(std::uint64_t u) {
    double s = 0.0;
    for (std::uint64_t t : divisors_by_trial(u)) {
        if (t == 1) continue;
        const double td = static_cast<double>(t);
        s += td * std::log(td) * guarded_loglog(td);
    }
    return s;
}

// u^s psi(u) = (logloglog u)^eta sum_{t|u} t (log t)(loglog t)
double us_psi(std::uint64_t u, double eta) {
    return std::pow(guarded_logloglog(static_cast<double>(u)), eta) * tll_sum(u);
}

}  // namespace

void CoefficientSet::validate() const {
    std::uint64_t prev = 0;
    for (const auto& e : entries) {
        if (e.k < 2) throw std::domain_error("coefficient keys must be >= 2");
        if (e.k <= prev) throw std::invalid_argument("coefficient keys must strictly increase");
        if (!std::isfinite(e.c)) throw std::invalid_argument("coefficients must be finite");
        prev = e.k;
    }
}

double quadratic_form(const CoefficientSet& cs, double s) {
    require_s(s);
    cs.validate();
    const auto& es = cs.entries;
    double q = 0.0;
    for (std::size_t i = 0; i < es.size(); ++i) {
        q += es[i].c * es[i].c;
        for (std::size_t j = i + 1; j < es.size(); ++j) {
            const std::uint64_t g = std::gcd(es[i].k, es[j].k);
            const double ratio = static_cast<double>(g) * static_cast<double>(g) /
                                 (static_cast<double>(es[i].k) * static_cast<double>(es[j].k));
            q += 2.0 * es[i].c * es[j].c * std::pow(ratio, s);
        }
    }
    return q;
}

double rhs_weight(std::uint64_t nu, double s, double eta) {
    require_s(s);
    require_eta(eta);
    if (nu < 2) throw std::domain_error("rhs_weight needs nu >= 2");
    double inner = 0.0;
    for (std::uint64_t d : divisors_by_trial(nu)) {
        if (d == 1) continue;
        const double dd = static_cast<double>(d);
        inner += std::log(dd) * guarded_loglog(dd) * std::pow(dd, 1.0 - 2.0 * s);
    }
    return std::pow(guarded_logloglog(static_cast<double>(nu)), eta) * inner;
}

double check_identity_f(const FactoredInteger& nu, double s) {
    require_s(s);
    nu.validate();
    const auto dc = nu.divisor_count_checked();
    if (!dc || *dc > kDefaultBudget) throw BudgetExceeded(dc ? *dc : ~0ull, kDefaultBudget);
    const auto value = nu.value_u64();
    if (!value) throw BudgetExceeded(~0ull, kDefaultBudget);
    const std::uint64_t n = *value;
    const auto divs = divisors_by_trial(n);
    const double two_s = 2.0 * s;

    double lhs = 0.0;
    for (std::uint64_t u : divs) {
        double inner = 0.0;
        for (std::uint64_t t : divs) {
            if (t > u || u % t) continue;
            if (t == 1) continue;
            const double td = static_cast<double>(t);
            inner += td * std::log(td) * guarded_loglog(td);
        }
        lhs += jordan_real(n / u, two_s) * inner;
    }

    double rhs = 0.0;
    for (std::uint64_t d : divs) {
        const std::uint64_t q = n / d;
        if (q == 1) continue;
        const double qd = static_cast<double>(q);
        rhs += std::pow(static_cast<double>(d), two_s) * qd * std::log(qd) *
               guarded_loglog(qd);
    }
    return std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
}

CsMajorantParts check_cs_majorant(const CoefficientSet& cs, double s, double eta) {
    require_s(s);
    require_eta(eta);
    cs.validate();
    const double two_s = 2.0 * s;

    std::set<std::uint64_t> closure;
    for (const auto& e : cs.entries)
        for (std::uint64_t d : divisors_by_trial(e.k)) closure.insert(d);

    CsMajorantParts parts{};
    parts.lhs = quadratic_form(cs, s);

    double diag = 0.0;
    for (const auto& e : cs.entries) {
        double core = 1.0;
        for (std::uint64_t p : prime_support(e.k))
            core *= 1.0 - std::pow(static_cast<double>(p), -two_s);
        diag += e.c * e.c * core;
    }
    parts.x1 = std::sqrt(diag);

    for (std::uint64_t u : closure) {
        if (u < 2) continue;
        parts.left2 += 1.0 / us_psi(u, eta);
    }

    for (const auto& e : cs.entries) {
        double inner = 0.0;
        for (std::uint64_t u : divisors_by_trial(e.k)) {
            if (u < 2) continue;
            inner += jordan_real(e.k / u, two_s) * us_psi(u, eta);
        }
        parts.right2 += e.c * e.c * std::pow(static_cast<double>(e.k), -two_s) * inner;
    }

    const double root = parts.x1 + std::sqrt(parts.left2 * parts.right2);
    parts.rhs = root * root;
    parts.margin = parts.rhs - parts.lhs;
    return parts;
}

SharpnessReport empirical_sharpness(std::uint64_t seed, unsigned trials, double s,
                                    double eta, std::uint64_t k_max,
                                    std::size_t max_size) {
    require_s(s);
    require_eta(eta);
    if (k_max < 2) throw std::domain_error("k_max must be >= 2");
    if (max_size == 0) throw std::domain_error("max_size must be positive");

    SharpnessReport rep;
    rep.s = s;
    rep.eta = eta;
    rep.trials = trials;

    for (unsigned i = 0; i < trials; ++i) {
        Rng rng(seed ^ (0x9e3779b97f4a7c15ull * (i + 1)));
        const std::size_t want = 1 + rng.below(max_size);
        std::set<std::uint64_t> keys;
        for (std::size_t j = 0; j < want; ++j) keys.insert(2 + rng.below(k_max - 1));
        const bool signs = (i % 2 == 0);

        CoefficientSet cs;
        for (std::uint64_t k : keys) {
            const double c = signs ? (rng.below(2) ? 1.0 : -1.0) : 2.0 * rng.real() - 1.0;
            cs.entries.push_back({k, c});
        }

        double denom = 0.0;
        for (const auto& e : cs.entries) denom += e.c * e.c * rhs_weight(e.k, s, eta);
        if (!(denom > 0.0)) continue;

        const double ratio = quadratic_form(cs, s) / denom;
        if (rep.argmax_summary.empty() || ratio > rep.max_ratio) {
            rep.max_ratio = ratio;
            std::ostringstream os;
            os << "trial=" << i << " size=" << cs.entries.size()
               << " kmin=" << cs.entries.front().k << " kmax=" << cs.entries.back().k
               << " mode=" << (signs ? "pm1" : "unif");
            rep.argmax_summary = os.str();
        }
    }
    return rep;
}

double proof_flavored_constant(double eta, std::uint64_t terms) {
    require_eta(eta);
    if (terms < 4000000) throw std::domain_error("need at least 4e6 terms for a bare-log tail");
    double sum = 0.0;
    for (std::uint64_t u = 2; u <= terms; ++u) {
        const double ud = static_cast<double>(u);
        sum += 1.0 / (ud * std::log(ud) * guarded_loglog(ud) *
                      std::pow(guarded_logloglog(ud), eta));
    }
    const double v = std::log(std::log(std::log(static_cast<double>(terms))));
    return sum + std::pow(v, 1.0 - eta) / (eta - 1.0);
}

}  // namespace ezd
