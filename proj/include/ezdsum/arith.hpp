#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ezdsum/factored.hpp"

namespace ezd {

// the statistics the workbench evaluates, either raw or divided by their
// asymptotic normalizer:
//   ez_ratio      = Phi / (loglog n)^2
//   psi_ratio     = Psi / ((loglog n)^2 logloglog n)
//   phi1_ratio    = Phi_1 / sum_i (log p_i)(loglog p_i)/p_i
//   w_ratio       = w / loglog n
//   phi_eta_ratio = Phi_eta / (loglog n)^(1+eta)
// with guarded logs taken of log n throughout.
struct StatKind {
    enum class Tag {
        phi, psi, phi1, phi2, phi_eta, davenport_w, sigma,
        ez_ratio, psi_ratio, phi1_ratio, w_ratio, phi_eta_ratio
    };
    Tag tag = Tag::phi;
    double param = 0.0; // eta for phi_eta kinds, u for sigma

    bool is_ratio() const {
        switch (tag) {
            case Tag::ez_ratio: case Tag::psi_ratio: case Tag::phi1_ratio:
            case Tag::w_ratio: case Tag::phi_eta_ratio: return true;
            default: return false;
        }
    }
    // psi is the one stat whose exact evaluation can blow the budget but
    // which still admits a truncated enclosure
    bool psi_based() const { return tag == Tag::psi || tag == Tag::psi_ratio; }
};

// names accepted on the command line; eta/u defaults 1.5 / -1.0
StatKind parse_stat(const std::string& name, double eta = 1.5, double u = -1.0);
std::string stat_name(const StatKind& s);

// Phi(n) = sum_{d|n} (log d)/d
double phi_enum(const FactoredInteger& n, std::uint64_t budget = kDefaultBudget);
// exact closed form: sum_i [sum_{v=1}^{a_i} v log p_i / p_i^v] * sigma_{-1}(n / p_i^{a_i})
double phi_closed(const FactoredInteger& n);

// Psi(n) = sum_{d|n} (log d)(guarded_loglog d)/d
double psi_enum(const FactoredInteger& n, std::uint64_t budget = kDefaultBudget);
ApproxValue psi_truncated(const FactoredInteger& n, double cap,
                          std::optional<double> rankin_delta = std::nullopt);

// Phi_1(n) = sum over exponent tuples of (sum_i mu_i log p_i guarded_loglog p_i) / prod p^mu;
// linear in mu, so it factorizes exactly
double phi1_closed(const FactoredInteger& n);

// Phi_2(n) = sum_{d|n} (log d) log Omega(d) / d, bare log of the prime-power count
double phi2_enum(const FactoredInteger& n, std::uint64_t budget = kDefaultBudget);

// Phi_eta(n) = sum_{d|n} (log d)^eta / d, eta > 1
double phi_eta_enum(const FactoredInteger& n, double eta, std::uint64_t budget = kDefaultBudget);

// Davenport's w(n) = sum_{p|n} (log p)/p
double davenport_w(const FactoredInteger& n);

// sigma_u(n) = sum of u-th powers of divisors, closed product form
double sigma_u(const FactoredInteger& n, double u);

int moebius(const FactoredInteger& n);

// J_eps(n) = sum_{d|n} d^eps mu(n/d) = prod p^{eps a} (1 - p^{-eps}), eps > 0
double jordan(const FactoredInteger& n, double eps);
// exact integer mode for integer eps
std::uint64_t jordan_int(const FactoredInteger& n, unsigned eps);

// smallest prime divisor; n = 1 has none
std::uint64_t smallest_prime_factor(const FactoredInteger& n);

// denominator used by normalized_ratio for the given kind (1.0 for raw stats)
double stat_normalizer(const FactoredInteger& n, const StatKind& stat);

double normalized_ratio(const FactoredInteger& n, const StatKind& stat,
                        std::uint64_t budget = kDefaultBudget);

// enclosure of psi / psi_ratio when enumeration is out of budget
struct RatioEnclosure {
    double lo = 0.0;
    double hi = 0.0;
};
RatioEnclosure ratio_enclosure(const FactoredInteger& n, const StatKind& stat, double cap,
                               std::optional<double> rankin_delta = std::nullopt);

} // namespace ezd
