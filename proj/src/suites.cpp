#include "ezdsum/suites.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "ezdsum/arith.hpp"
#include "ezdsum/extremal.hpp"
#include "ezdsum/gcd_forms.hpp"
#include "ezdsum/rng.hpp"

namespace ezd {

namespace {

struct Acc {
    std::uint64_t pts = 0;
    std::uint64_t viol = 0;
    double worst = std::numeric_limits<double>::infinity();
    void add(double margin) {
        ++pts;
        if (margin < 0) ++viol;
        worst = std::min(worst, margin);
    }
};

LemmaCheckReport finish(const std::string& id, const std::string& desc, const Acc& a) {
    return {id, desc, a.pts, a.viol, a.pts ? a.worst : 0.0};
}

// walk every divisor of f as its own FactoredInteger
template <typename F>
void for_each_divisor_factored(const FactoredInteger& f, F&& fn) {
    const std::size_t r = f.factors.size();
    std::vector<std::uint32_t> e(r, 0);
    for (;;) {
        FactoredInteger d;
        for (std::size_t i = 0; i < r; ++i)
            if (e[i]) d.factors.push_back({f.factors[i].p, e[i]});
        fn(d);
        std::size_t i = 0;
        while (i < r && e[i] == f.factors[i].a) e[i++] = 0;
        if (i == r) break;
        ++e[i];
    }
}

double phi1_by_tuples(const FactoredInteger& f) {
    const std::size_t r = f.factors.size();
    std::vector<std::uint32_t> mu(r, 0);
    double total = 0.0;
    for (;;) {
        double num = 0.0, den = 1.0;
        bool zero = true;
        for (std::size_t i = 0; i < r; ++i) {
            if (mu[i]) zero = false;
            const double p = static_cast<double>(f.factors[i].p);
            num += mu[i] * std::log(p) * guarded_loglog(p);
            den *= std::pow(p, static_cast<double>(mu[i]));
        }
        if (!zero) total += num / den;
        std::size_t i = 0;
        while (i < r && mu[i] == f.factors[i].a) mu[i++] = 0;
        if (i == r) break;
        ++mu[i];
    }
    return total;
}

std::vector<LemmaCheckReport> identity_checks(const PrimeTable& table,
                                              const SuiteOptions& opts) {
    std::vector<LemmaCheckReport> out;
    const std::uint64_t max_n = std::max<std::uint64_t>(opts.max, 2);

    {
        Acc a;
        for (std::uint64_t n = 2; n <= max_n; ++n) {
            const auto f = factorize(table, n);
            const double c = phi_closed(f);
            const double e = phi_enum(f);
            a.add(1e-10 - std::abs(c - e) / std::max(1.0, std::abs(e)));
        }
        std::ostringstream os;
        os << "factorized closed form vs divisor enumeration, n in [2, " << max_n << "]";
        out.push_back(finish("phi_closed_vs_enum", os.str(), a));
    }

    {
        Acc a;
        const std::uint64_t cap = std::min<std::uint64_t>(max_n, 5000);
        for (std::uint64_t n = 2; n <= cap; ++n) {
            const auto f = factorize(table, n);
            const double c = phi1_closed(f);
            const double e = phi1_by_tuples(f);
            a.add(1e-10 - std::abs(c - e) / std::max(1.0, std::abs(e)));
        }
        std::ostringstream os;
        os << "prime-power factorization vs exponent-tuple sum, n in [2, " << cap << "]";
        out.push_back(finish("phi1_closed_vs_tuples", os.str(), a));
    }

    {
        Acc a;
        Rng rng(opts.seed ^ 0x5deece66dull);
        const double u_vals[] = {-1.0, 0.5, 2.0};
        for (unsigned t = 0; t < std::max(opts.trials, 1u); ++t) {
            std::uint64_t x = 2 + rng.below(999), y = 2 + rng.below(999);
            while (std::gcd(x, y) != 1) y = 2 + rng.below(999);
            const double u = u_vals[t % 3];
            const double lhs = sigma_u(factorize(table, x * y), u);
            const double rhs = sigma_u(factorize(table, x), u) * sigma_u(factorize(table, y), u);
            a.add(1e-10 - std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
        }
        std::ostringstream os;
        os << a.pts << " random coprime pairs in [2, 1000], u cycling {-1, 0.5, 2}";
        out.push_back(finish("sigma_multiplicative", os.str(), a));
    }

    {
        Acc a;
        for (std::uint64_t n = 1; n <= max_n; ++n) {
            const auto f = factorize(table, n);
            long long sum = 0;
            for_each_divisor_factored(f, [&](const FactoredInteger& d) { sum += moebius(d); });
            const long long expect = (n == 1) ? 1 : 0;
            a.add(0.5 - static_cast<double>(std::llabs(sum - expect)));
        }
        std::ostringstream os;
        os << "sum of moebius over divisors is [n = 1], n in [1, " << max_n << "]";
        out.push_back(finish("moebius_divisor_sum", os.str(), a));
    }

    {
        Acc a;
        const std::uint64_t cap = std::min<std::uint64_t>(max_n, 10000);
        for (std::uint64_t n = 2; n <= cap; ++n) {
            const auto f = factorize(table, n);
            for (unsigned k = 1; k <= 2; ++k) {
                unsigned __int128 sum = 0;
                for_each_divisor_factored(
                    f, [&](const FactoredInteger& d) { sum += jordan_int(d, k); });
                unsigned __int128 expect = 1;
                for (unsigned i = 0; i < k; ++i) expect *= n;
                a.add(0.5 - (sum == expect ? 0.0 : 1.0));
            }
        }
        std::ostringstream os;
        os << "divisor sums of the Jordan function rebuild n^k, k in {1, 2}, n in [2, " << cap
           << "]";
        out.push_back(finish("jordan_inversion", os.str(), a));
    }

    {
        Acc a;
        const std::uint64_t cap = std::min<std::uint64_t>(max_n, 2000);
        for (std::uint64_t nu = 1; nu <= cap; ++nu) {
            const auto f = factorize(table, nu);
            a.add(1e-9 - check_identity_f(f, 1.0));
            a.add(1e-9 - check_identity_f(f, 0.6));
        }
        std::ostringstream os;
        os << "double divisor sum vs its Moebius collapse, nu in [1, " << cap
           << "], s in {0.6, 1}";
        out.push_back(finish("identity_f", os.str(), a));
    }

    return out;
}

std::vector<LemmaCheckReport> lemma_checks(const PrimeTable& table, const SuiteOptions& opts) {
    std::vector<LemmaCheckReport> out;
    const std::uint64_t max_n = std::max<std::uint64_t>(opts.max, 100);
    out.push_back(check_phivar(default_phivar_grid()));
    out.push_back(quadrature_selfcheck());
    out.push_back(check_E1_default());
    out.push_back(check_E3a_and_E2_default());
    out.push_back(check_E3_recurrence_default());
    out.push_back(check_convexity_lemma(opts.seed, 2000));
    out.push_back(check_hH_default());
    out.push_back(check_phi_eta_conditional(table, std::min<std::uint64_t>(max_n, 5000),
                                            {1.5, 3.0}));
    out.push_back(check_tezm_range(table, max_n));
    out.push_back(check_phi1maj_range(table, max_n));
    out.push_back(check_phi1_sandwich_range(table, max_n));
    out.push_back(check_phi2_lower_range(table, max_n));  // fails by design; see README
    out.push_back(check_phi2_lower_adjusted_range(table, max_n));
    out.push_back(check_psi_split_range(table, max_n));
    out.push_back(check_phi2_growth_ratio(table, max_n, true));
    out.push_back(check_phi2_growth_ratio(table, max_n, false));
    out.push_back(davenport_distant_check(table, 3, 8));
    return out;
}

std::vector<LemmaCheckReport> gcd_checks(const PrimeTable& table, const SuiteOptions& opts) {
    std::vector<LemmaCheckReport> out;

    {
        Acc a;
        for (unsigned t = 0; t < opts.trials; ++t) {
            Rng rng(opts.seed + t);
            const std::size_t size = 1 + rng.below(100);
            CoefficientSet cs;
            std::uint64_t prev = 1;
            for (std::size_t i = 0; i < size; ++i) {
                const std::uint64_t k = prev + 1 + rng.below(100);
                if (k > 10000) break;
                const double c = (t % 2) ? (rng.below(2) ? 1.0 : -1.0) : 2.0 * rng.real() - 1.0;
                cs.entries.push_back({k, c});
                prev = k;
            }
            if (cs.entries.empty()) continue;
            const double s = (t % 4 < 2) ? 1.0 : 0.6;
            const auto parts = check_cs_majorant(cs, s, 1.5);
            a.add(parts.margin + 1e-9 * std::abs(parts.rhs));
        }
        std::ostringstream os;
        os << a.pts << " seeded coefficient sets, |K| <= 100, K in [2, 10000], s in {0.6, 1},"
           << " eta = 1.5, seed = " << opts.seed;
        out.push_back(finish("cs_majorant", os.str(), a));
    }

    {
        Acc a;
        for (std::uint64_t nu = 1; nu <= 500; ++nu) {
            const auto f = factorize(table, nu);
            a.add(1e-9 - check_identity_f(f, 1.0));
            a.add(1e-9 - check_identity_f(f, 0.6));
        }
        out.push_back(finish("identity_f_spot",
                             "divisor-sum collapse, nu in [1, 500], s in {0.6, 1}", a));
    }

    {
        Acc a;
        const std::uint64_t primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29,
                                        31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
                                        73, 79, 83, 89, 97};
        for (unsigned t = 0; t < 25; ++t) {
            Rng rng(opts.seed ^ (0xc2b2ae3d27d4eb4full + t));
            CoefficientSet cs;
            double sc2 = 0.0, sck = 0.0, sck2 = 0.0;
            for (std::uint64_t p : primes) {
                const double c = 2.0 * rng.real() - 1.0;
                cs.entries.push_back({p, c});
                sc2 += c * c;
                sck += c / static_cast<double>(p);
                sck2 += c * c / (static_cast<double>(p) * static_cast<double>(p));
            }
            const double expect = sc2 + sck * sck - sck2;
            const double got = quadratic_form(cs, 1.0);
            a.add(1e-11 - std::abs(got - expect) / std::max(1.0, std::abs(expect)));
        }
        out.push_back(finish("prime_support_closed_form",
                             "25 seeded sign patterns over the primes below 100, s = 1", a));
    }

    {
        const auto rep = empirical_sharpness(opts.seed, opts.trials, 1.0, 1.5);
        std::ostringstream os;
        os << "trials = " << rep.trials << ", s = 1, eta = 1.5, argmax { " << rep.argmax_summary
           << " }";
        const bool ok = std::isfinite(rep.max_ratio) && rep.max_ratio >= 0.0;
        out.push_back({"empirical_sharpness", os.str(), rep.trials, ok ? 0u : 1u,
                       rep.max_ratio});
    }

    return out;
}

}  // namespace

SuiteReport run_suite(const std::string& name, const SuiteOptions& opts) {
    if (name != "identities" && name != "lemmas" && name != "gcd" && name != "all")
        throw std::invalid_argument("unknown suite: " + name);

    const std::uint64_t limit = std::max(opts.table_limit, opts.max + 1);
    const PrimeTable table = build_prime_table(limit);

    SuiteReport rep;
    rep.suite = name;
    if (name == "identities" || name == "all") {
        auto v = identity_checks(table, opts);
        rep.checks.insert(rep.checks.end(), v.begin(), v.end());
    }
    if (name == "lemmas" || name == "all") {
        auto v = lemma_checks(table, opts);
        rep.checks.insert(rep.checks.end(), v.begin(), v.end());
    }
    if (name == "gcd" || name == "all") {
        auto v = gcd_checks(table, opts);
        rep.checks.insert(rep.checks.end(), v.begin(), v.end());
    }
    return rep;
}

}  // namespace ezd
