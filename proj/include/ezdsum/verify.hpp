#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ezdsum/factored.hpp"
#include "ezdsum/primes.hpp"

namespace ezd {

// one grid run of a named inequality check; margins carry the check's slack,
// so violations == 0 exactly when worst_margin >= 0
struct LemmaCheckReport {
    std::string lemma_id;
    std::string grid_description;
    std::uint64_t points_checked = 0;
    std::uint64_t violations = 0;
    double worst_margin = 0.0;
};

// prime/exponent state for the recurrence bounds: odd primes p_1 < ... < p_r,
// exponents a_i >= 1, and the derived coefficients used to chain partial sums
struct ChainingContext {
    std::vector<std::uint64_t> primes;
    std::vector<std::uint32_t> alphas;

    ChainingContext(std::vector<std::uint64_t> p, std::vector<std::uint32_t> a);

    std::size_t r() const { return primes.size(); }

    // per-index coefficients, 1-based to match the recurrence
    double b(std::size_t s) const;     // (1/p_s)(1 + 1/log p_s)
    double beta(std::size_t s) const;  // 1/(2 p_s (log p_s)^2)
    double Pi(std::size_t s) const;    // prod_{l<=s} (1 - p_l^{-a_l-1})/(1 - p_l^{-1})

    // tail coefficients built from the largest prime
    double c0() const;
    double c1() const { return 1.0; }
    double c2() const;
    double c3() const;
    double c4() const;
    double c() const { return c1() + c2() + c3(); }

    // Phi_s(h) = sum over tuples (mu_1..mu_s), 0 <= mu_i <= a_i,
    // of prod p_i^{-mu_i} * log(sum mu_i + h); needs h >= 1
    double phi_s(std::size_t s, int h) const;
};

// truncated series and closed-form bounds used by the checks, exposed so the
// tests can pin individual values; every *_lhs already includes its tail bound
namespace series {
double e1_lhs(double A, double alpha);
double e1_rhs(double A, double alpha);
double e3a_lhs(std::uint64_t p, std::uint64_t S, int h);
double e3a1_rhs(std::uint64_t p, std::uint64_t S, int h);
double e3a2_rhs(std::uint64_t p, std::uint64_t S, int h);
double e2i_lhs(std::uint64_t p, std::uint64_t S);
double e2i_rhs(std::uint64_t p, std::uint64_t S);
double e2ii_lhs(std::uint64_t p);
double e2ii_rhs(std::uint64_t p);
} // namespace series

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol);

// upper bounds on the two integrals compared against closed forms below:
//   alpha * int_m^inf x log(A+x) e^{-alpha x} dx      (integral2)
//   int_1^inf log(A+x) e^{-alpha x} dx                (integral3)
// quadrature plus an analytic remainder past the truncation point
double phivar_integral2_upper(double A, double alpha, int m, double tol = 1e-12);
double phivar_integral3_upper(double A, double alpha, double tol = 1e-12);

struct PhivarGrid {
    std::vector<double> A;        // >= 1
    std::vector<double> alpha1;   // >= log 2, for the x log(A+x) shapes
    std::vector<double> alpha2;   // >= 1, for the log(A+x) shapes
    std::vector<int> m;           // >= 1
    double x_max = 40.0;
    double x_step = 0.5;
};
PhivarGrid default_phivar_grid();
LemmaCheckReport check_phivar(const PhivarGrid& grid);

// max quadrature discrepancy between tolerance 1e-12 and 1e-14 runs over the
// default grid; reported as a check against the 1e-10 consistency requirement
LemmaCheckReport quadrature_selfcheck();

LemmaCheckReport check_E1(const std::vector<double>& A_values,
                          const std::vector<double>& alpha_values);
LemmaCheckReport check_E1_default();

LemmaCheckReport check_E3a_and_E2(const std::vector<std::uint64_t>& prime_values,
                                  const std::vector<std::uint64_t>& S_values,
                                  const std::vector<int>& h_values);
LemmaCheckReport check_E3a_and_E2_default();

LemmaCheckReport check_E3_recurrence(const ChainingContext& ctx, std::size_t s, int h);
LemmaCheckReport check_E3_recurrence_default();

LemmaCheckReport check_convexity_lemma(std::uint64_t seed, std::uint64_t random_vectors);

int h_theta(double theta);          // smallest h0 with h log h <= theta (log 2) e^h for all h >= h0
double hH_rhs(double H, double h);  // e^h log( log(H+h) / log H )
// margin of h <= hH_rhs(H, h); hypotheses e^{theta/((1-theta)log 2)} <= H <= h,
// h >= h_theta(theta) are enforced
double hH_margin(double theta, double H, double h);
LemmaCheckReport check_hH(const std::vector<double>& thetas);
LemmaCheckReport check_hH_default();

// Phi_eta(n) / ((loglog n)^eta sigma_{-1}(n)) for n with sum 1/(p_i - 1) < 2^{1-eta};
// the admissible constant is unspecified, so the scan records the observed sup
double phi_eta_conditional_ratio(const FactoredInteger& n, double eta,
                                 std::uint64_t budget = kDefaultBudget);
LemmaCheckReport check_phi_eta_conditional(const PrimeTable& table, std::uint64_t max_n,
                                           const std::vector<double>& etas);

// range scans over 2..max_n
LemmaCheckReport check_tezm_range(const PrimeTable& table, std::uint64_t max_n);
LemmaCheckReport check_phi1maj_range(const PrimeTable& table, std::uint64_t max_n);
LemmaCheckReport check_phi1_sandwich_range(const PrimeTable& table, std::uint64_t max_n);
// as stated: Phi_2(n) >= (log 2)(P/(P+1)) prod(1+1/p) sum log p/p for omega >= 2.
// this fails (first at n = 6); the report carries the failure honestly
LemmaCheckReport check_phi2_lower_range(const PrimeTable& table, std::uint64_t max_n);
// repaired lower bound with the same flavor:
// Phi_2(n) >= (log 2) sum_j (log p_j / p_j)(prod_{i != j} sigma_{-1}(p_i^{a_i}) - 1)
LemmaCheckReport check_phi2_lower_adjusted_range(const PrimeTable& table,
                                                 std::uint64_t max_n);
LemmaCheckReport check_psi_split_range(const PrimeTable& table, std::uint64_t max_n);
// empirical record of Phi_2(n) / ((guarded_logloglog omega)(log omega) w(n)), omega >= 2
LemmaCheckReport check_phi2_growth_ratio(const PrimeTable& table, std::uint64_t max_n,
                                         bool odd_only);

} // namespace ezd
