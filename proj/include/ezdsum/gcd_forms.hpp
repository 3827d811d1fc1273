#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ezdsum/factored.hpp"

namespace ezd {

// finite support {k_i} with real weights, k strictly increasing, every k >= 2
struct CoefficientEntry {
    std::uint64_t k;
    double c;
};

struct CoefficientSet {
    std::vector<CoefficientEntry> entries;
    void validate() const;
};

// sum over ordered pairs of c_k c_l gcd(k,l)^{2s} / (k l)^s, 0 < s <= 1
double quadratic_form(const CoefficientSet& cs, double s);

// (logloglog nu)^eta * sum_{d | nu} (log d)(loglog d) / d^{2s-1}, guarded logs
double rhs_weight(std::uint64_t nu, double s, double eta);

// relative gap between sum_{u|nu} J_{2s}(nu/u) sum_{t|u} t (log t)(loglog t)
// and sum_{d|nu} d^{2s} (nu/d) log(nu/d) loglog(nu/d); zero up to rounding for
// every nu (Moebius inversion collapses the double sum regardless of weight)
double check_identity_f(const FactoredInteger& nu, double s);

// pieces of the Cauchy-Schwarz majorant for the quadratic form.  With
// psi(u) = u^{-s} (logloglog u)^eta sum_{t|u} t (log t)(loglog t), splitting
// the divisor variable into its diagonal (quotient 1) and the rest gives
//   Q <= (x1 + sqrt(left2 * right2))^2
// where x1^2 is the exact diagonal mass sum c_k^2 prod_{p|k}(1 - p^{-2s}),
// left2 = sum_{u in F(K), u >= 2} 1/(u^s psi(u)) over the divisor closure
// F(K), and right2 = sum_k c_k^2 k^{-2s} sum_{u|k, u>=2} J_{2s}(k/u) u^s psi(u).
// The quotient-1 column is kept exact because psi(1) = 0 would otherwise sit
// in a denominator.
struct CsMajorantParts {
    double lhs;     // quadratic_form(cs, s)
    double x1;      // sqrt of the exact diagonal mass
    double left2;
    double right2;
    double rhs;     // (x1 + sqrt(left2 * right2))^2
    double margin;  // rhs - lhs, nonnegative up to rounding
};

CsMajorantParts check_cs_majorant(const CoefficientSet& cs, double s, double eta);

// randomized lower estimate of the best constant relating the form to
// sum c_k^2 rhs_weight(k): max over trials of Q / sum c_k^2 rhs_weight(k).
// Even trials draw c from {-1,+1}, odd trials uniform in [-1,1]; each trial
// has its own seed stream so runs are reproducible and order-independent.
struct SharpnessReport {
    double s = 0.0;
    double eta = 0.0;
    unsigned trials = 0;
    double max_ratio = 0.0;
    std::string argmax_summary;  // empty when trials == 0
};

SharpnessReport empirical_sharpness(std::uint64_t seed, unsigned trials, double s,
                                    double eta, std::uint64_t k_max = 10000,
                                    std::size_t max_size = 100);

// partial sum of 1/(u (log u)(loglog u)(logloglog u)^eta) from u = 2 with
// guarded inner logs, plus the integral tail bound (logloglog N)^{1-eta}/(eta-1);
// needs N past e^e^e so the tail integrand uses bare logs.  An upper bound on
// the series, decreasing in N toward the true value.
double proof_flavored_constant(double eta, std::uint64_t terms = 4000000);

}  // namespace ezd
