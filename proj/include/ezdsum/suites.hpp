#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ezdsum/verify.hpp"

namespace ezd {

struct SuiteOptions {
    std::uint64_t max = 20000;       // upper end of the n-scans
    unsigned trials = 200;           // random coefficient sets / sharpness trials
    std::uint64_t seed = 1;
    std::uint64_t table_limit = 2000000;
};

struct SuiteReport {
    std::string suite;
    std::vector<LemmaCheckReport> checks;

    std::uint64_t total_violations() const {
        std::uint64_t v = 0;
        for (const auto& c : checks) v += c.violations;
        return v;
    }
};

// name in {"identities", "lemmas", "gcd", "all"}; unknown -> invalid_argument.
// identities: exact algebraic cross-checks (closed forms vs enumeration,
//   multiplicativity, Moebius/Jordan inversion, the divisor-sum collapse).
// lemmas: every explicit-constant inequality on its documented default grid --
//   including the one stated bound that genuinely fails, so this suite
//   reports violations by design.
// gcd: quadratic-form majorant, prime-support closed form, sharpness scan.
SuiteReport run_suite(const std::string& name, const SuiteOptions& opts);

}  // namespace ezd
