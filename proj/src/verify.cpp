#include "ezdsum/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ezdsum/arith.hpp"
#include "ezdsum/rng.hpp"

namespace ezd {

namespace {

double sigma_m1_pp(std::uint64_t p, std::uint32_t a) {
    const double ip = 1.0 / static_cast<double>(p);
    return (1.0 - std::pow(ip, static_cast<double>(a) + 1.0)) / (1.0 - ip);
}

// margins already carry each check's slack, so "violation" is margin < 0
struct Accum {
    std::uint64_t pts = 0, viol = 0;
    double worst = std::numeric_limits<double>::infinity();
    void add(double margin) {
        ++pts;
        if (margin < 0.0) ++viol;
        if (margin < worst) worst = margin;
    }
};

LemmaCheckReport finish(std::string id, std::string desc, const Accum& a) {
    LemmaCheckReport r;
    r.lemma_id = std::move(id);
    r.grid_description = std::move(desc);
    r.points_checked = a.pts;
    r.violations = a.viol;
    r.worst_margin = a.pts ? a.worst : 0.0;
    return r;
}

constexpr double kSlack = 1e-12;

} // namespace

// ---------------------------------------------------------------- chaining

ChainingContext::ChainingContext(std::vector<std::uint64_t> p, std::vector<std::uint32_t> a)
    : primes(std::move(p)), alphas(std::move(a)) {
    if (primes.empty() || primes.size() != alphas.size())
        throw std::invalid_argument("need equally many primes and exponents, at least one");
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (primes[i] < 3) throw std::domain_error("all primes must be >= 3");
        if (i > 0 && primes[i] <= primes[i - 1])
            throw std::invalid_argument("primes must be strictly increasing");
        if (alphas[i] < 1) throw std::domain_error("exponents must be >= 1");
    }
}

double ChainingContext::b(std::size_t s) const {
    const double p = static_cast<double>(primes.at(s - 1));
    return (1.0 / p) * (1.0 + 1.0 / std::log(p));
}

double ChainingContext::beta(std::size_t s) const {
    const double p = static_cast<double>(primes.at(s - 1));
    const double lp = std::log(p);
    return 1.0 / (2.0 * p * lp * lp);
}

double ChainingContext::Pi(std::size_t s) const {
    if (s < 1 || s > r()) throw std::out_of_range("Pi index");
    double prod = 1.0;
    for (std::size_t l = 0; l < s; ++l) prod *= sigma_m1_pp(primes[l], alphas[l]);
    return prod;
}

double ChainingContext::c0() const {
    const double p = static_cast<double>(primes.back());
    return std::log(p) / p;
}
double ChainingContext::c2() const { return 2.0 / static_cast<double>(primes.back()); }
double ChainingContext::c3() const {
    const double p = static_cast<double>(primes.back());
    const double lp = std::log(p);
    return (1.0 / (p * p)) * (3.0 + 3.0 / lp + 1.0 / (lp * lp));
}
double ChainingContext::c4() const {
    const double p = static_cast<double>(primes.back());
    const double lp = std::log(p);
    return (1.0 / (p * p * p * lp)) * (1.0 + 1.0 / (3.0 * lp));
}

double ChainingContext::phi_s(std::size_t s, int h) const {
    if (s < 1 || s > r()) throw std::out_of_range("phi_s index");
    if (h < 1) throw std::domain_error("phi_s needs h >= 1");
    double tuples = 1.0;
    for (std::size_t i = 0; i < s; ++i) tuples *= static_cast<double>(alphas[i]) + 1.0;
    if (tuples > 4e6) throw std::runtime_error("phi_s tuple space too large");

    std::vector<std::uint32_t> mu(s, 0);
    double total = 0.0;
    for (;;) {
        double w = 1.0;
        std::uint64_t msum = 0;
        for (std::size_t i = 0; i < s; ++i) {
            w *= std::pow(static_cast<double>(primes[i]), -static_cast<double>(mu[i]));
            msum += mu[i];
        }
        total += w * std::log(static_cast<double>(msum) + h);
        std::size_t i = 0;
        while (i < s && mu[i] == alphas[i]) mu[i++] = 0;
        if (i == s) break;
        ++mu[i];
    }
    return total;
}

// ---------------------------------------------------------------- series

namespace series {

double e1_lhs(double A, double alpha) {
    if (!(A >= 1.0) || !(alpha >= 1.0))
        throw std::domain_error("series bound needs A >= 1, alpha >= 1");
    // terms alpha*mu*log(A+mu)*e^{-alpha*mu}; past mu=10 the term ratio is
    // below e^{-1}*1.1*1.04 < 0.45, so three extra terms dominate the tail
    double sum = 0.0;
    for (int mu = 1; mu < 200000; ++mu) {
        const double term = alpha * mu * std::log(A + mu) * std::exp(-alpha * mu);
        sum += term;
        if (mu >= 10 && 3.0 * term < 1e-14) {
            sum += 3.0 * term;
            break;
        }
    }
    return sum;
}

double e1_rhs(double A, double alpha) {
    if (!(A >= 1.0) || !(alpha >= 1.0))
        throw std::domain_error("series bound needs A >= 1, alpha >= 1");
    const double l1 = std::log(A + 1.0), l2 = std::log(A + 2.0), l3 = std::log(A + 3.0);
    return alpha * l1 * std::exp(-alpha) + 2.0 * alpha * l2 * std::exp(-2.0 * alpha) +
           (3.0 * alpha * l3 + 3.0 * l3 + l3 / alpha + 1.0 / alpha +
            1.0 / (alpha * alpha * (A + 3.0))) *
               std::exp(-3.0 * alpha);
}

double e3a_lhs(std::uint64_t p, std::uint64_t S, int h) {
    if (p < 3) throw std::domain_error("needs p >= 3");
    if (h < 0 || S + static_cast<std::uint64_t>(h) < 1)
        throw std::domain_error("needs S + h >= 1");
    const double invp = 1.0 / static_cast<double>(p);
    double sum = 0.0, w = 1.0;
    for (int mu = 0; mu < 100000; ++mu) {
        const double arg = static_cast<double>(S) + mu + h;
        const double term = std::log(arg) * w;
        sum += term;
        // ratio of successive terms is (log(arg+1)/log arg)/p <= 0.53 once arg >= 2
        if (mu >= 5 && 3.0 * term < 1e-14) {
            sum += 3.0 * term;
            break;
        }
        w *= invp;
    }
    return sum;
}

double e3a1_rhs(std::uint64_t p, std::uint64_t S, int h) {
    if (p < 3) throw std::domain_error("needs p >= 3");
    if (h < 0 || S + static_cast<std::uint64_t>(h) < 1)
        throw std::domain_error("needs S + h >= 1");
    const double pd = static_cast<double>(p), lp = std::log(pd);
    const double Sh = static_cast<double>(S) + h;
    return std::log(Sh) + (1.0 / pd) * (1.0 + 1.0 / lp) * std::log(Sh + 1.0) +
           1.0 / ((static_cast<double>(S) + 3.0) * lp * lp * pd);
}

double e3a2_rhs(std::uint64_t p, std::uint64_t S, int h) {
    if (p < 3) throw std::domain_error("needs p >= 3");
    const double pd = static_cast<double>(p), lp = std::log(pd);
    return (1.0 + (1.0 / pd) * (1.0 + 1.0 / lp + 1.0 / (3.0 * lp * lp))) *
           std::log(static_cast<double>(S) + h + 2.0);
}

double e2i_lhs(std::uint64_t p, std::uint64_t S) {
    if (p < 3) throw std::domain_error("needs p >= 3");
    if (S < 1) throw std::domain_error("needs S >= 1");
    const double pd = static_cast<double>(p), lp = std::log(pd);
    double sum = 0.0, w = 1.0 / pd;
    for (int mu = 1; mu < 100000; ++mu) {
        const double term = mu * lp * w * std::log(static_cast<double>(S) + mu);
        sum += term;
        if (mu >= 10 && 3.0 * term < 1e-14) {
            sum += 3.0 * term;
            break;
        }
        w /= pd;
    }
    return sum;
}

double e2i_rhs(std::uint64_t p, std::uint64_t S) {
    if (p < 3) throw std::domain_error("needs p >= 3");
    if (S < 1) throw std::domain_error("needs S >= 1");
    const double pd = static_cast<double>(p);
    return 5.0 * (std::log(pd) / pd) * std::log(static_cast<double>(S) + 3.0);
}

double e2ii_lhs(std::uint64_t p) {
    if (p < 3) throw std::domain_error("needs p >= 3");
    const double pd = static_cast<double>(p), lp = std::log(pd);
    double sum = 0.0, w = 1.0 / (pd * pd);
    for (int mu = 2; mu < 100000; ++mu) {
        const double term = mu * lp * w * std::log(static_cast<double>(mu));
        sum += term;
        if (mu >= 10 && 3.0 * term < 1e-14) {
            sum += 3.0 * term;
            break;
        }
        w /= pd;
    }
    return sum;
}

double e2ii_rhs(std::uint64_t p) {
    if (p < 3) throw std::domain_error("needs p >= 3");
    const double pd = static_cast<double>(p);
    return 18.0 * std::log(pd) / pd;
}

} // namespace series

// ---------------------------------------------------------------- quadrature

namespace {

double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double eps, int depth) {
    const double m = 0.5 * (a + b), lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * eps)
        return left + right + delta / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, eps * 0.5, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, eps * 0.5, depth - 1);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol) {
    if (!(b > a)) return 0.0;
    const double fa = f(a), fb = f(b), m = 0.5 * (a + b), fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

double phivar_integral2_upper(double A, double alpha, int m, double tol) {
    if (!(A >= 1.0) || !(alpha >= std::log(2.0) - 1e-15) || m < 1)
        throw std::domain_error("integral bound needs A >= 1, alpha >= log 2, m >= 1");
    double U = std::max(static_cast<double>(m), 4.0) + 160.0 / alpha;
    while (std::log(A + U) > U) U += 5.0;  // keeps log(A+x) <= x on the tail
    const auto f = [A, alpha](double x) {
        return x * std::log(A + x) * std::exp(-alpha * x);
    };
    // the bound gets asymptotically sharp as alpha*m grows, so the quadrature
    // error must shrink with the integral itself, not stay absolute
    const double scale = std::exp(-alpha * m) * (1.0 + m * std::log(A + m));
    const double tol_eff = tol * scale;
    const double I = adaptive_simpson(f, static_cast<double>(m), U, tol_eff);
    // remainder under log(A+x) <= x: int_U^inf x^2 e^{-alpha x} dx
    const double tail = std::exp(-alpha * U) *
                        (U * U / alpha + 2.0 * U / (alpha * alpha) +
                         2.0 / (alpha * alpha * alpha));
    return alpha * (I + tail + tol_eff);
}

double phivar_integral3_upper(double A, double alpha, double tol) {
    if (!(A >= 1.0) || !(alpha >= 1.0))
        throw std::domain_error("integral bound needs A >= 1, alpha >= 1");
    double U = 4.0 + 160.0 / alpha;
    while (std::log(A + U) > U) U += 5.0;
    const auto f = [A, alpha](double x) { return std::log(A + x) * std::exp(-alpha * x); };
    const double tol_eff = tol * std::exp(-alpha) * std::log(A + 1.0);
    const double I = adaptive_simpson(f, 1.0, U, tol_eff);
    const double tail = std::exp(-alpha * U) * (U / alpha + 1.0 / (alpha * alpha));
    return I + tail + tol_eff;
}

// ---------------------------------------------------------------- phivar

PhivarGrid default_phivar_grid() {
    PhivarGrid g;
    g.A = {1.0, 2.0, 5.0, 10.0, 100.0};
    g.alpha1 = {std::log(2.0), 0.8, 1.0, 2.0, 5.0};
    g.alpha2 = {1.0, 1.5, 2.0, 5.0};
    g.m = {1, 2, 3, 5, 10};
    return g;
}

static void validate_phivar_grid(const PhivarGrid& g) {
    if (g.A.empty() || g.alpha1.empty() || g.alpha2.empty() || g.m.empty())
        throw std::domain_error("empty grid");
    for (double A : g.A)
        if (!(A >= 1.0)) throw std::domain_error("grid needs A >= 1");
    for (double a : g.alpha1)
        if (!(a >= std::log(2.0) - 1e-15)) throw std::domain_error("grid needs alpha >= log 2");
    for (double a : g.alpha2)
        if (!(a >= 1.0)) throw std::domain_error("grid needs alpha >= 1");
    for (int m : g.m)
        if (m < 1) throw std::domain_error("grid needs m >= 1");
    if (!(g.x_step > 0.0) || !(g.x_max >= 4.0)) throw std::domain_error("bad x grid");
}

LemmaCheckReport check_phivar(const PhivarGrid& g) {
    validate_phivar_grid(g);
    Accum acc;
    // monotone decrease of x log(A+x) e^{-alpha x} on [3, inf) for alpha >= log 2
    for (double A : g.A)
        for (double al : g.alpha1)
            for (double x = 3.0; x + g.x_step <= g.x_max + 1e-9; x += g.x_step) {
                const double f1 = x * std::log(A + x) * std::exp(-al * x);
                const double x2 = x + g.x_step;
                const double f2 = x2 * std::log(A + x2) * std::exp(-al * x2);
                acc.add(f1 - f2 + kSlack);
            }
    // monotone decrease of log(A+x) e^{-alpha x} on [1, inf) for alpha >= 1
    for (double A : g.A)
        for (double al : g.alpha2)
            for (double x = 1.0; x + g.x_step <= g.x_max + 1e-9; x += g.x_step) {
                const double f1 = std::log(A + x) * std::exp(-al * x);
                const double x2 = x + g.x_step;
                const double f2 = std::log(A + x2) * std::exp(-al * x2);
                acc.add(f1 - f2 + kSlack);
            }
    // alpha int_m^inf x log(A+x) e^{-alpha x} dx against its four-term bound
    for (double A : g.A)
        for (double al : g.alpha1)
            for (int m : g.m) {
                const double lhs = phivar_integral2_upper(A, al, m);
                const double lm = std::log(A + m);
                const double rhs = std::exp(-al * m) *
                                   (1.0 / (al * al * (A + m)) + 1.0 / al + lm / al +
                                    m * lm);
                acc.add(rhs - lhs + kSlack);
            }
    // int_1^inf log(A+x) e^{-alpha x} dx against its two-term bound
    for (double A : g.A)
        for (double al : g.alpha2) {
            const double lhs = phivar_integral3_upper(A, al);
            const double rhs = std::exp(-al) * (std::log(A + 1.0) / al +
                                                1.0 / (al * al * (A + 1.0)));
            acc.add(rhs - lhs + kSlack);
        }
    std::ostringstream d;
    d << "A in {1,2,5,10,100}-style grid (" << g.A.size() << " values), alpha grids of "
      << g.alpha1.size() << "/" << g.alpha2.size() << ", x in [1," << g.x_max << "] step "
      << g.x_step << ", m grid of " << g.m.size()
      << "; monotonicity on consecutive samples, integrals by adaptive quadrature with "
         "analytic tail remainder; slack 1e-12";
    return finish("phivar", d.str(), acc);
}

LemmaCheckReport quadrature_selfcheck() {
    const PhivarGrid g = default_phivar_grid();
    double worst = 0.0;
    std::uint64_t pts = 0, viol = 0;
    for (double A : g.A)
        for (double al : g.alpha1)
            for (int m : g.m) {
                const double a = phivar_integral2_upper(A, al, m, 1e-12);
                const double b = phivar_integral2_upper(A, al, m, 1e-14);
                const double diff = std::abs(a - b);
                ++pts;
                if (diff > worst) worst = diff;
                if (diff >= 1e-10) ++viol;
            }
    for (double A : g.A)
        for (double al : g.alpha2) {
            const double a = phivar_integral3_upper(A, al, 1e-12);
            const double b = phivar_integral3_upper(A, al, 1e-14);
            const double diff = std::abs(a - b);
            ++pts;
            if (diff > worst) worst = diff;
            if (diff >= 1e-10) ++viol;
        }
    LemmaCheckReport r;
    r.lemma_id = "quadrature_selfcheck";
    std::ostringstream d;
    d << "same integrals at tolerance 1e-12 vs 1e-14 over the default grid; "
         "largest discrepancy "
      << worst << "; margin = 1e-10 - discrepancy";
    r.grid_description = d.str();
    r.points_checked = pts;
    r.violations = viol;
    r.worst_margin = 1e-10 - worst;
    return r;
}

// ---------------------------------------------------------------- E1

LemmaCheckReport check_E1(const std::vector<double>& A_values,
                          const std::vector<double>& alpha_values) {
    if (A_values.empty() || alpha_values.empty()) throw std::domain_error("empty grid");
    Accum acc;
    for (double A : A_values)
        for (double al : alpha_values)
            acc.add(series::e1_rhs(A, al) - series::e1_lhs(A, al) + kSlack);
    std::ostringstream d;
    d << A_values.size() << " A-values x " << alpha_values.size()
      << " alpha-values, A >= 1, alpha >= 1; series truncated with geometric tail "
         "added to the left side; slack 1e-12";
    return finish("E1", d.str(), acc);
}

LemmaCheckReport check_E1_default() {
    return check_E1({1.0, 1.5, 2.0, 3.0, 5.0, 10.0, 50.0, 100.0},
                    {1.0, 1.2, 1.5, 2.0, 3.0, 5.0, 10.0});
}

// ---------------------------------------------------------------- E3a + E2

LemmaCheckReport check_E3a_and_E2(const std::vector<std::uint64_t>& prime_values,
                                  const std::vector<std::uint64_t>& S_values,
                                  const std::vector<int>& h_values) {
    if (prime_values.empty() || S_values.empty() || h_values.empty())
        throw std::domain_error("empty grid");
    for (std::uint64_t p : prime_values)
        if (p < 3) throw std::domain_error("needs primes >= 3");
    Accum acc;
    for (std::uint64_t p : prime_values)
        for (std::uint64_t S : S_values)
            for (int h : h_values) {
                if (h < 0 || S + static_cast<std::uint64_t>(h) < 1) continue;
                const double lhs = series::e3a_lhs(p, S, h);
                acc.add(series::e3a1_rhs(p, S, h) - lhs + kSlack);
                acc.add(series::e3a2_rhs(p, S, h) - lhs + kSlack);
            }
    for (std::uint64_t p : prime_values)
        for (std::uint64_t S : S_values) {
            if (S < 1) continue;
            acc.add(series::e2i_rhs(p, S) - series::e2i_lhs(p, S) + kSlack);
        }
    for (std::uint64_t p : prime_values)
        acc.add(series::e2ii_rhs(p) - series::e2ii_lhs(p) + kSlack);
    std::ostringstream d;
    d << prime_values.size() << " primes x " << S_values.size() << " S-values x "
      << h_values.size()
      << " h-values (S+h >= 1); both displayed series bounds, plus the S >= 1 and S = 0 "
         "corollary bounds; slack 1e-12";
    return finish("E3a_E2", d.str(), acc);
}

LemmaCheckReport check_E3a_and_E2_default() {
    return check_E3a_and_E2({3, 5, 7, 11, 13, 31, 101, 997},
                            {0, 1, 2, 3, 5, 10, 20, 50}, {0, 1, 2, 3, 5});
}

// ---------------------------------------------------------------- E3

LemmaCheckReport check_E3_recurrence(const ChainingContext& ctx, std::size_t s, int h) {
    if (s < 2 || s > ctx.r()) throw std::domain_error("needs 2 <= s <= r");
    if (h < 1) throw std::domain_error("needs h >= 1");
    const double lhs = ctx.phi_s(s, h);
    const double rhs = ctx.phi_s(s - 1, h) + ctx.b(s) * ctx.phi_s(s - 1, h + 1) +
                       ctx.beta(s) * ctx.Pi(s - 1);
    Accum acc;
    acc.add(rhs - lhs + kSlack);
    std::ostringstream d;
    d << "single point: r = " << ctx.r() << ", s = " << s << ", h = " << h
      << "; slack 1e-12";
    return finish("E3", d.str(), acc);
}

LemmaCheckReport check_E3_recurrence_default() {
    const std::vector<ChainingContext> ctxs = {
        ChainingContext({3, 5}, {2, 2}),
        ChainingContext({3, 5, 7}, {1, 1, 1}),
        ChainingContext({3, 31}, {3, 1}),
        ChainingContext({3, 5, 7, 11}, {2, 1, 1, 1}),
        ChainingContext({5, 7, 11}, {3, 2, 1}),
        ChainingContext({3, 7, 13}, {2, 2, 2}),
    };
    Accum acc;
    for (const auto& ctx : ctxs)
        for (std::size_t s = 2; s <= ctx.r(); ++s)
            for (int h = 1; h <= 3; ++h) {
                const double lhs = ctx.phi_s(s, h);
                const double rhs = ctx.phi_s(s - 1, h) +
                                   ctx.b(s) * ctx.phi_s(s - 1, h + 1) +
                                   ctx.beta(s) * ctx.Pi(s - 1);
                acc.add(rhs - lhs + kSlack);
                // the partial sums grow with h
                acc.add(ctx.phi_s(s, h + 1) - ctx.phi_s(s, h) + kSlack);
            }
    return finish("E3",
                  "6 prime/exponent contexts, s = 2..r, h in {1,2,3}; recurrence step and "
                  "monotonicity in h; slack 1e-12",
                  acc);
}

// ---------------------------------------------------------------- convexity

namespace {

double convexity_margin(const std::vector<std::uint64_t>& primes,
                        const std::vector<std::uint32_t>& mu) {
    double T = 0.0, wsum = 0.0;
    std::uint64_t M = 0;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (mu[i] == 0) continue;
        const double lp = std::log(static_cast<double>(primes[i]));
        T += mu[i] * lp;
        wsum += mu[i] * lp * std::log(lp);  // bare log log p, may be negative at p = 2
        M += mu[i];
    }
    const double lhs = (T == 0.0) ? 0.0 : T * std::log(T);
    const double rhs = wsum + ((M == 0) ? 0.0 : T * std::log(static_cast<double>(M)));
    return rhs - lhs;
}

} // namespace

LemmaCheckReport check_convexity_lemma(std::uint64_t seed, std::uint64_t random_vectors) {
    const std::vector<std::uint64_t> primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
    const double slack = 1e-10;  // single-prime vectors hit equality exactly
    Accum acc;

    std::vector<std::uint32_t> mu(primes.size(), 0);
    acc.add(convexity_margin(primes, mu) + slack);  // all-zero vector
    for (std::size_t i = 0; i < primes.size(); ++i)
        for (std::uint32_t m = 1; m <= 8; ++m) {
            std::fill(mu.begin(), mu.end(), 0u);
            mu[i] = m;
            acc.add(convexity_margin(primes, mu) + slack);
        }
    std::fill(mu.begin(), mu.end(), 1u);
    acc.add(convexity_margin(primes, mu) + slack);
    std::fill(mu.begin(), mu.end(), 5u);
    acc.add(convexity_margin(primes, mu) + slack);
    for (auto [i, j] : {std::pair<std::size_t, std::size_t>{0, 1}, {0, 9}, {8, 9}}) {
        std::fill(mu.begin(), mu.end(), 0u);
        mu[i] = 3;
        mu[j] = 3;
        acc.add(convexity_margin(primes, mu) + slack);
    }
    std::fill(mu.begin(), mu.end(), 0u);
    mu[0] = 100;  // heavy single-prime mass
    acc.add(convexity_margin(primes, mu) + slack);

    Rng rng(seed);
    for (std::uint64_t t = 0; t < random_vectors; ++t) {
        for (auto& m : mu) m = static_cast<std::uint32_t>(rng.below(6));
        acc.add(convexity_margin(primes, mu) + slack);
    }
    std::ostringstream d;
    d << "first 10 primes; boundary vectors (zero, single-prime mass up to mu = 100, "
         "uniform, two-prime) plus "
      << random_vectors << " random vectors with mu <= 5, seed " << seed
      << "; slack 1e-10 (single-prime vectors are exact equalities)";
    return finish("convexity", d.str(), acc);
}

// ---------------------------------------------------------------- hH

int h_theta(double theta) {
    if (!(theta > 0.0 && theta < 1.0)) throw std::domain_error("needs 0 < theta < 1");
    const double lc = std::log(theta * std::log(2.0));
    // compare h log h <= theta (log 2) e^h in log space; beyond 512 the right
    // side wins by hundreds of orders
    for (int h = 512; h >= 2; --h) {
        const double lhs = std::log(static_cast<double>(h)) +
                           std::log(std::log(static_cast<double>(h)));
        if (!(lhs <= lc + h)) return h + 1;
    }
    return 1;
}

double hH_rhs(double H, double h) {
    if (!(H > 1.0) || !(h >= 1.0)) throw std::domain_error("needs H > 1, h >= 1");
    return std::exp(h) * std::log(std::log(H + h) / std::log(H));
}

double hH_margin(double theta, double H, double h) {
    if (!(theta > 0.0 && theta < 1.0)) throw std::domain_error("needs 0 < theta < 1");
    const double Hmin = std::exp(theta / ((1.0 - theta) * std::log(2.0)));
    if (!(H >= Hmin - 1e-12) || !(H <= h))
        throw std::domain_error("needs exp(theta/((1-theta)log 2)) <= H <= h");
    if (h < static_cast<double>(h_theta(theta)))
        throw std::domain_error("h below the admissible threshold for this theta");
    return hH_rhs(H, h) - h;
}

LemmaCheckReport check_hH(const std::vector<double>& thetas) {
    if (thetas.empty()) throw std::domain_error("empty grid");
    Accum acc;
    for (double theta : thetas) {
        const int h0 = h_theta(theta);
        const double Hmin = std::exp(theta / ((1.0 - theta) * std::log(2.0)));
        const int hl = std::max(h0, static_cast<int>(std::ceil(Hmin)));
        std::vector<int> hs;
        for (int h = hl; h <= hl + 5; ++h) hs.push_back(h);
        for (int h : {10, 20, 50, 100, 200, 500})
            if (h > hl + 5) hs.push_back(h);
        for (int h : hs) {
            // geometric H sweep from the lower admissible end up to H = h
            for (int k = 0; k <= 6; ++k) {
                const double H = Hmin * std::pow(h / Hmin, k / 6.0);
                acc.add(hH_rhs(H, h) - h + kSlack);
            }
        }
    }
    std::ostringstream d;
    d << thetas.size()
      << " theta-values; h from max(h_theta, ceil(H_min)) up to 500, H swept "
         "geometrically from H_min to h (H = h included); slack 1e-12";
    return finish("hH", d.str(), acc);
}

LemmaCheckReport check_hH_default() {
    return check_hH({0.2, 0.35, 0.5, 0.65, 0.8});
}

// ---------------------------------------------------------------- phi_eta

double phi_eta_conditional_ratio(const FactoredInteger& n, double eta,
                                 std::uint64_t budget) {
    if (!(eta > 1.0)) throw std::domain_error("needs eta > 1");
    double cond = 0.0;
    for (const auto& f : n.factors) cond += 1.0 / (static_cast<double>(f.p) - 1.0);
    if (!(cond < std::exp2(1.0 - eta)))
        throw std::domain_error("sum 1/(p-1) must stay below 2^(1-eta)");
    const double ll = guarded_loglog_from_log(n.log_of());
    return phi_eta_enum(n, eta, budget) / (std::pow(ll, eta) * sigma_u_closed(n, -1.0));
}

LemmaCheckReport check_phi_eta_conditional(const PrimeTable& table, std::uint64_t max_n,
                                           const std::vector<double>& etas) {
    if (etas.empty()) throw std::domain_error("empty grid");
    for (double e : etas)
        if (!(e > 1.0)) throw std::domain_error("needs eta > 1");
    std::uint64_t pts = 0;
    double sup = 0.0;
    std::ostringstream per;
    for (double eta : etas) {
        const double thr = std::exp2(1.0 - eta);
        double local = 0.0;
        for (std::uint64_t n = 2; n <= max_n; ++n) {
            const auto f = factorize(table, n);
            double cond = 0.0;
            for (const auto& pp : f.factors)
                cond += 1.0 / (static_cast<double>(pp.p) - 1.0);
            if (!(cond < thr)) continue;
            const double r = phi_eta_conditional_ratio(f, eta);
            ++pts;
            if (r > local) local = r;
        }
        if (local > sup) sup = local;
        per << " eta=" << eta << ": sup " << local << ";";
    }
    LemmaCheckReport r;
    r.lemma_id = "phi_eta_conditional";
    std::ostringstream d;
    d << "empirical record (no asserted threshold): sup of Phi_eta / ((loglog n)^eta "
         "sigma_{-1}(n)) over admissible n <= "
      << max_n << ";" << per.str() << " worst_margin holds the overall sup";
    r.grid_description = d.str();
    r.points_checked = pts;
    r.violations = 0;
    r.worst_margin = sup;
    return r;
}

// ---------------------------------------------------------------- range scans

LemmaCheckReport check_tezm_range(const PrimeTable& table, std::uint64_t max_n) {
    Accum acc;
    for (std::uint64_t n = 2; n <= max_n; ++n) {
        const auto f = factorize(table, n);
        double prod = 1.0, s = 0.0;
        for (const auto& pp : f.factors) {
            const double p = static_cast<double>(pp.p);
            prod *= 1.0 / (1.0 - 1.0 / p);
            s += std::log(p) / (p - 1.0);
        }
        acc.add(prod * s - phi_closed(f) + kSlack);
    }
    std::ostringstream d;
    d << "n in [2," << max_n << "]; Phi(n) <= prod(1-1/p)^-1 sum log p/(p-1); slack 1e-12";
    return finish("tezm", d.str(), acc);
}

LemmaCheckReport check_phi1maj_range(const PrimeTable& table, std::uint64_t max_n) {
    Accum acc;
    for (std::uint64_t n = 2; n <= max_n; ++n) {
        const auto f = factorize(table, n);
        double prod = 1.0, s = 0.0;
        for (const auto& pp : f.factors) {
            const double p = static_cast<double>(pp.p);
            prod *= 1.0 / (1.0 - 1.0 / p);
            s += std::log(p) * guarded_loglog(p) / (p - 1.0);
        }
        acc.add(prod * s - phi1_closed(f) + kSlack);
    }
    std::ostringstream d;
    d << "n in [2," << max_n
      << "]; Phi_1(n) <= prod(1-1/p)^-1 sum (log p)(loglog p)/(p-1); slack 1e-12";
    return finish("phi1_majorant", d.str(), acc);
}

LemmaCheckReport check_phi1_sandwich_range(const PrimeTable& table, std::uint64_t max_n) {
    Accum acc;
    for (std::uint64_t n = 2; n <= max_n; ++n) {
        const auto f = factorize(table, n);
        double prod = 1.0, prod_plus = 1.0, denom = 0.0;
        for (const auto& pp : f.factors) {
            const double p = static_cast<double>(pp.p);
            prod *= 1.0 / (1.0 - 1.0 / p);
            prod_plus *= 1.0 + 1.0 / p;
            denom += std::log(p) * guarded_loglog(p) / p;
        }
        const double ratio = phi1_closed(f) / denom;
        const double pmin = static_cast<double>(f.factors.front().p);
        acc.add(ratio - (1.0 - 1.0 / pmin) * prod_plus + kSlack);
        acc.add(2.0 * prod - ratio + kSlack);
    }
    std::ostringstream d;
    d << "n in [2," << max_n
      << "], two margins per n: (1-1/P)prod(1+1/p) <= Phi_1/sum (log p)(loglog p)/p "
         "<= 2 prod(1-1/p)^-1; slack 1e-12";
    return finish("phi1_sandwich", d.str(), acc);
}

LemmaCheckReport check_phi2_lower_range(const PrimeTable& table, std::uint64_t max_n) {
    Accum acc;
    std::uint64_t first_bad = 0;
    double first_margin = 0.0;
    for (std::uint64_t n = 2; n <= max_n; ++n) {
        const auto f = factorize(table, n);
        if (f.factors.size() < 2) continue;
        double prod_plus = 1.0, s = 0.0;
        for (const auto& pp : f.factors) {
            const double p = static_cast<double>(pp.p);
            prod_plus *= 1.0 + 1.0 / p;
            s += std::log(p) / p;
        }
        const double pmin = static_cast<double>(f.factors.front().p);
        const double rhs = std::log(2.0) * (pmin / (pmin + 1.0)) * prod_plus * s;
        const double margin = phi2_enum(f) - rhs + kSlack;
        acc.add(margin);
        if (margin < 0.0 && first_bad == 0) {
            first_bad = n;
            first_margin = margin;
        }
    }
    std::ostringstream d;
    d << "n in [2," << max_n
      << "] with at least two prime factors; asserted lower bound "
         "(log 2)(P/(P+1))prod(1+1/p)sum log p/p; slack 1e-12";
    if (first_bad)
        d << "; FAILS as stated, first at n = " << first_bad << " (margin " << first_margin
          << ")";
    return finish("phi2_lower", d.str(), acc);
}

LemmaCheckReport check_phi2_lower_adjusted_range(const PrimeTable& table,
                                                 std::uint64_t max_n) {
    Accum acc;
    for (std::uint64_t n = 2; n <= max_n; ++n) {
        const auto f = factorize(table, n);
        double full = 1.0;
        for (const auto& pp : f.factors) full *= sigma_m1_pp(pp.p, pp.a);
        double s = 0.0;
        for (const auto& pp : f.factors) {
            const double p = static_cast<double>(pp.p);
            s += (std::log(p) / p) * (full / sigma_m1_pp(pp.p, pp.a) - 1.0);
        }
        acc.add(phi2_enum(f) - std::log(2.0) * s + kSlack);
    }
    std::ostringstream d;
    d << "n in [2," << max_n
      << "]; repaired lower bound (log 2) sum_j (log p_j/p_j)(prod_{i!=j} "
         "sigma_{-1}(p_i^{a_i}) - 1), exact equality at squarefree n with two prime "
         "factors; slack 1e-12";
    return finish("phi2_lower_adjusted", d.str(), acc);
}

LemmaCheckReport check_psi_split_range(const PrimeTable& table, std::uint64_t max_n) {
    Accum acc;
    for (std::uint64_t n = 2; n <= max_n; ++n) {
        const auto f = factorize(table, n);
        acc.add(phi1_closed(f) + phi2_enum(f) - psi_enum(f) + kSlack);
    }
    std::ostringstream d;
    d << "n in [2," << max_n << "]; Psi(n) <= Phi_1(n) + Phi_2(n); slack 1e-12";
    return finish("psi_split", d.str(), acc);
}

LemmaCheckReport check_phi2_growth_ratio(const PrimeTable& table, std::uint64_t max_n,
                                         bool odd_only) {
    std::uint64_t pts = 0, arg = 0;
    double sup = 0.0;
    for (std::uint64_t n = 2; n <= max_n; ++n) {
        if (odd_only && n % 2 == 0) continue;
        const auto f = factorize(table, n);
        const std::size_t omega = f.factors.size();
        if (omega < 2) continue;
        const double denom = guarded_logloglog(static_cast<double>(omega)) *
                             std::log(static_cast<double>(omega)) * davenport_w(f);
        const double r = phi2_enum(f) / denom;
        ++pts;
        if (r > sup) {
            sup = r;
            arg = n;
        }
    }
    LemmaCheckReport r;
    r.lemma_id = odd_only ? "phi2_growth_ratio_odd" : "phi2_growth_ratio_all";
    std::ostringstream d;
    d << "empirical record (no asserted threshold): sup of Phi_2(n) / "
         "((logloglog omega)(log omega) w(n)) over "
      << (odd_only ? "odd " : "") << "n <= " << max_n
      << " with omega >= 2; sup attained at n = " << arg
      << "; worst_margin holds the sup";
    r.grid_description = d.str();
    r.points_checked = pts;
    r.violations = 0;
    r.worst_margin = sup;
    return r;
}

} // namespace ezd
