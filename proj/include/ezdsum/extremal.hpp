#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ezdsum/arith.hpp"
#include "ezdsum/factored.hpp"
#include "ezdsum/primes.hpp"
#include "ezdsum/verify.hpp"

namespace ezd {

// n_j = product of p^j over primes p < e^j
FactoredInteger build_nj(const PrimeTable& table, unsigned j);

// greedy squarefree product of "distant" primes: p_1 = p_start and each
// p_{s+1} is the smallest table prime exceeding p_s with p_1...p_s <= p_{s+1}
FactoredInteger build_distant_sequence(const PrimeTable& table, std::uint64_t p_start,
                                       std::size_t r);

struct TrendRow {
    unsigned j = 0;
    double log_n = 0.0;
    double ratio = 0.0;  // lower end of the enclosure when truncation kicked in
    double width = 0.0;  // tail bound over the normalizer; 0 when exact
};
std::vector<TrendRow> trend_report(const PrimeTable& table, unsigned j_lo, unsigned j_hi,
                                   const StatKind& stat, double cap,
                                   std::uint64_t budget = kDefaultBudget);

struct ChampionRecord {
    std::uint64_t n = 0;
    std::string factorization;
    StatKind stat;
    double value = 0.0;
    double normalizer = 1.0;
    double ratio = 0.0;
    std::uint64_t index = 0;  // position in the record stream
};

struct ChampionResult {
    std::vector<ChampionRecord> records;
    // n whose enclosure straddled the incumbent: possibly a record, not provably so
    std::vector<std::uint64_t> undecided;
};

// scans n = 2..n_max in order and keeps every n whose ratio strictly exceeds
// all earlier ones; chunked across threads with a sequential merge, so the
// output is identical for every thread count
ChampionResult champion_search(const PrimeTable& table, std::uint64_t n_max,
                               const StatKind& stat, std::uint64_t budget = kDefaultBudget,
                               unsigned threads = 1, double psi_cap = 1e6);

// w(n) <= guarded_logloglog(n) over distant sequences; the admissible starting
// prime is unspecified, so the scan reports the smallest safe one
LemmaCheckReport davenport_distant_check(const PrimeTable& table,
                                         std::uint64_t p_start_min, std::size_t r_max);

} // namespace ezd
