#include "ezdsum/arith.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ezd {

StatKind parse_stat(const std::string& name, double eta, double u) {
    StatKind s;
    using T = StatKind::Tag;
    if (name == "phi") s.tag = T::phi;
    else if (name == "psi") s.tag = T::psi;
    else if (name == "phi1") s.tag = T::phi1;
    else if (name == "phi2") s.tag = T::phi2;
    else if (name == "phi_eta") { s.tag = T::phi_eta; s.param = eta; }
    else if (name == "w") s.tag = T::davenport_w;
    else if (name == "sigma") { s.tag = T::sigma; s.param = u; }
    else if (name == "ez_ratio") s.tag = T::ez_ratio;
    else if (name == "psi_ratio") s.tag = T::psi_ratio;
    else if (name == "phi1_ratio") s.tag = T::phi1_ratio;
    else if (name == "w_ratio") s.tag = T::w_ratio;
    else if (name == "phi_eta_ratio") { s.tag = T::phi_eta_ratio; s.param = eta; }
    else throw std::invalid_argument("unknown stat name: " + name);
    if ((s.tag == T::phi_eta || s.tag == T::phi_eta_ratio) && !(eta > 1.0))
        throw std::domain_error("phi_eta requires eta > 1");
    return s;
}

std::string stat_name(const StatKind& s) {
    using T = StatKind::Tag;
    switch (s.tag) {
        case T::phi: return "phi";
        case T::psi: return "psi";
        case T::phi1: return "phi1";
        case T::phi2: return "phi2";
        case T::phi_eta: return "phi_eta";
        case T::davenport_w: return "w";
        case T::sigma: return "sigma";
        case T::ez_ratio: return "ez_ratio";
        case T::psi_ratio: return "psi_ratio";
        case T::phi1_ratio: return "phi1_ratio";
        case T::w_ratio: return "w_ratio";
        case T::phi_eta_ratio: return "phi_eta_ratio";
    }
    return "?";
}

double phi_enum(const FactoredInteger& n, std::uint64_t budget) {
    return fold_divisors(n, budget, [](double ld, std::uint64_t, double inv) {
        return ld * inv;
    });
}

// sigma_{-1} of a single prime power, (1 - p^{-a-1}) / (1 - p^{-1})
static double sigma_m1_pp(std::uint64_t p, std::uint32_t a) {
    const double ip = 1.0 / static_cast<double>(p);
    return (1.0 - std::pow(ip, static_cast<double>(a) + 1.0)) / (1.0 - ip);
}

double phi_closed(const FactoredInteger& n) {
    const auto& fs = n.factors;
    double total = 0.0;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        const double lp = std::log(static_cast<double>(fs[i].p));
        const double ip = 1.0 / static_cast<double>(fs[i].p);
        double inner = 0.0, pw = ip;
        for (std::uint32_t v = 1; v <= fs[i].a; ++v) {
            inner += static_cast<double>(v) * lp * pw;
            pw *= ip;
        }
        double rest = 1.0;
        for (std::size_t j = 0; j < fs.size(); ++j)
            if (j != i) rest *= sigma_m1_pp(fs[j].p, fs[j].a);
        total += inner * rest;
    }
    return total;
}

double psi_enum(const FactoredInteger& n, std::uint64_t budget) {
    return fold_divisors(n, budget, [](double ld, std::uint64_t, double inv) {
        return ld * guarded_loglog_from_log(ld) * inv;
    });
}

ApproxValue psi_truncated(const FactoredInteger& n, double cap,
                          std::optional<double> rankin_delta) {
    return fold_divisors_truncated(n, cap, TruncWeight{true, true}, rankin_delta);
}

double phi1_closed(const FactoredInteger& n) {
    const auto& fs = n.factors;
    double total = 0.0;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        const double p = static_cast<double>(fs[i].p);
        const double coeff = std::log(p) * guarded_loglog(p);
        const double ip = 1.0 / p;
        double inner = 0.0, pw = ip;
        for (std::uint32_t mu = 1; mu <= fs[i].a; ++mu) {
            inner += static_cast<double>(mu) * coeff * pw;
            pw *= ip;
        }
        double rest = 1.0;
        for (std::size_t j = 0; j < fs.size(); ++j)
            if (j != i) rest *= sigma_m1_pp(fs[j].p, fs[j].a);
        total += inner * rest;
    }
    return total;
}

double phi2_enum(const FactoredInteger& n, std::uint64_t budget) {
    return fold_divisors(n, budget, [](double ld, std::uint64_t omega, double inv) {
        if (omega <= 1) return 0.0; // log 1 = 0, and d = 1 contributes nothing
        return ld * std::log(static_cast<double>(omega)) * inv;
    });
}

double phi_eta_enum(const FactoredInteger& n, double eta, std::uint64_t budget) {
    if (!(eta > 1.0)) throw std::domain_error("phi_eta requires eta > 1");
    return fold_divisors(n, budget, [eta](double ld, std::uint64_t, double inv) {
        return std::pow(ld, eta) * inv;
    });
}

double davenport_w(const FactoredInteger& n) {
    double s = 0.0;
    for (const auto& f : n.factors)
        s += std::log(static_cast<double>(f.p)) / static_cast<double>(f.p);
    return s;
}

double sigma_u(const FactoredInteger& n, double u) {
    return sigma_u_closed(n, u);
}

int moebius(const FactoredInteger& n) {
    for (const auto& f : n.factors)
        if (f.a > 1) return 0;
    return (n.factors.size() % 2 == 0) ? 1 : -1;
}

double jordan(const FactoredInteger& n, double eps) {
    if (!(eps > 0.0)) throw std::domain_error("jordan requires eps > 0");
    double r = 1.0;
    for (const auto& f : n.factors) {
        const double p = static_cast<double>(f.p);
        r *= std::exp(eps * static_cast<double>(f.a) * std::log(p)) *
             (1.0 - std::pow(p, -eps));
    }
    return r;
}

std::uint64_t jordan_int(const FactoredInteger& n, unsigned eps) {
    if (eps == 0) throw std::domain_error("jordan_int requires eps >= 1");
    using u128 = unsigned __int128;
    u128 r = 1;
    const u128 lim = std::numeric_limits<std::uint64_t>::max();
    for (const auto& f : n.factors) {
        // p^{eps*a} - p^{eps*(a-1)}
        u128 lo = 1;
        for (std::uint64_t e = 0; e < static_cast<std::uint64_t>(eps) * (f.a - 1); ++e) {
            lo *= f.p;
            if (lo > lim) throw std::overflow_error("jordan_int overflows 64 bits");
        }
        u128 hi = lo;
        for (unsigned e = 0; e < eps; ++e) {
            hi *= f.p;
            if (hi > lim) throw std::overflow_error("jordan_int overflows 64 bits");
        }
        r *= hi - lo;
        if (r > lim) throw std::overflow_error("jordan_int overflows 64 bits");
    }
    return static_cast<std::uint64_t>(r);
}

std::uint64_t smallest_prime_factor(const FactoredInteger& n) {
    if (n.factors.empty()) throw std::domain_error("1 has no prime factor");
    return n.factors.front().p;
}

double stat_normalizer(const FactoredInteger& n, const StatKind& stat) {
    using T = StatKind::Tag;
    if (!stat.is_ratio()) return 1.0;
    if (n.factors.empty())
        throw std::domain_error("normalized ratios are undefined at n = 1");
    const double ln = n.log_of();
    const double ll = guarded_loglog_from_log(ln);
    switch (stat.tag) {
        case T::ez_ratio: return ll * ll;
        case T::psi_ratio: return ll * ll * guarded_logloglog_from_log(ln);
        case T::phi1_ratio: {
            double s = 0.0;
            for (const auto& f : n.factors) {
                const double p = static_cast<double>(f.p);
                s += std::log(p) * guarded_loglog(p) / p;
            }
            return s;
        }
        case T::w_ratio: return ll;
        case T::phi_eta_ratio: return std::pow(ll, 1.0 + stat.param);
        default: return 1.0;
    }
}

double normalized_ratio(const FactoredInteger& n, const StatKind& stat,
                        std::uint64_t budget) {
    using T = StatKind::Tag;
    const double norm = stat_normalizer(n, stat);
    double v = 0.0;
    switch (stat.tag) {
        case T::phi: case T::ez_ratio: v = phi_closed(n); break;
        case T::psi: case T::psi_ratio: v = psi_enum(n, budget); break;
        case T::phi1: case T::phi1_ratio: v = phi1_closed(n); break;
        case T::phi2: v = phi2_enum(n, budget); break;
        case T::phi_eta: case T::phi_eta_ratio:
            v = phi_eta_enum(n, stat.param, budget); break;
        case T::davenport_w: case T::w_ratio: v = davenport_w(n); break;
        case T::sigma: v = sigma_u(n, stat.param); break;
    }
    return v / norm;
}

RatioEnclosure ratio_enclosure(const FactoredInteger& n, const StatKind& stat, double cap,
                               std::optional<double> rankin_delta) {
    if (!stat.psi_based())
        throw std::domain_error("only psi-based stats need a truncated enclosure");
    const double norm = stat_normalizer(n, stat);
    const ApproxValue a = psi_truncated(n, cap, rankin_delta);
    return {a.value / norm, (a.value + a.tail_bound) / norm};
}

} // namespace ezd
