#include "ezdsum/extremal.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace ezd {

FactoredInteger build_nj(const PrimeTable& table, unsigned j) {
    if (j < 1) throw std::domain_error("needs j >= 1");
    const double bound = std::exp(static_cast<double>(j));
    if (bound > static_cast<double>(table.limit) + 1.0)
        throw std::out_of_range("prime table too small for this j");
    FactoredInteger n;
    for (std::uint64_t p : primes_below(table, bound)) n.factors.push_back({p, j});
    return n;
}

FactoredInteger build_distant_sequence(const PrimeTable& table, std::uint64_t p_start,
                                       std::size_t r) {
    if (r < 1) throw std::domain_error("needs r >= 1");
    const auto& ps = table.primes;
    if (!std::binary_search(ps.begin(), ps.end(), p_start))
        throw std::invalid_argument("p_start must be a prime in the table");
    FactoredInteger n;
    n.factors.push_back({p_start, 1});
    unsigned __int128 prod = p_start;
    while (n.factors.size() < r) {
        const std::uint64_t prev = n.factors.back().p;
        if (prod > table.limit)
            throw std::out_of_range("prime table exhausted before reaching r primes");
        const std::uint64_t want = std::max<std::uint64_t>(
            static_cast<std::uint64_t>(prod), prev + 1);
        auto it = std::lower_bound(ps.begin(), ps.end(), want);
        if (it == ps.end())
            throw std::out_of_range("prime table exhausted before reaching r primes");
        n.factors.push_back({*it, 1});
        prod *= *it;
    }
    return n;
}

std::vector<TrendRow> trend_report(const PrimeTable& table, unsigned j_lo, unsigned j_hi,
                                   const StatKind& stat, double cap,
                                   std::uint64_t budget) {
    if (j_lo < 1 || j_lo > j_hi) throw std::invalid_argument("bad j range");
    std::vector<TrendRow> rows;
    for (unsigned j = j_lo; j <= j_hi; ++j) {
        const FactoredInteger f = build_nj(table, j);
        const double norm = stat_normalizer(f, stat);
        TrendRow row;
        row.j = j;
        row.log_n = f.log_of();
        const auto dc = f.divisor_count_checked();
        if (stat.psi_based() && (!dc || *dc > budget)) {
            const ApproxValue a = psi_truncated(f, cap);
            row.ratio = a.value / norm;
            row.width = a.tail_bound / norm;
        } else {
            row.ratio = normalized_ratio(f, stat, budget);
            row.width = 0.0;
        }
        rows.push_back(row);
    }
    return rows;
}

namespace {

struct Candidate {
    std::uint64_t n;
    double lo, hi, value, norm;
};

} // namespace

ChampionResult champion_search(const PrimeTable& table, std::uint64_t n_max,
                               const StatKind& stat, std::uint64_t budget,
                               unsigned threads, double psi_cap) {
    if (n_max < 2) throw std::invalid_argument("needs n_max >= 2");
    if (n_max > table.limit) throw std::invalid_argument("n_max beyond the prime table");
    if (threads < 1) threads = 1;

    constexpr std::uint64_t kChunk = 32768;
    const std::uint64_t first = 2, last = n_max;
    const std::uint64_t chunk_count = (last - first) / kChunk + 1;
    std::vector<std::vector<Candidate>> chunks(chunk_count);
    std::atomic<std::uint64_t> next_chunk{0};

    auto work = [&]() {
        for (;;) {
            const std::uint64_t ci = next_chunk.fetch_add(1);
            if (ci >= chunk_count) return;
            const std::uint64_t lo_n = first + ci * kChunk;
            const std::uint64_t hi_n = std::min(last, lo_n + kChunk - 1);
            auto& out = chunks[ci];
            double local_best = -std::numeric_limits<double>::infinity();
            for (std::uint64_t n = lo_n; n <= hi_n; ++n) {
                const FactoredInteger f = factorize(table, n);
                const double norm = stat_normalizer(f, stat);
                double lo, hi, value;
                try {
                    value = normalized_ratio(f, stat, budget) * norm;
                    lo = hi = value / norm;
                } catch (const BudgetExceeded&) {
                    if (!stat.psi_based()) throw;
                    const ApproxValue a = psi_truncated(f, psi_cap);
                    value = a.value;
                    lo = a.value / norm;
                    hi = (a.value + a.tail_bound) / norm;
                }
                if (hi > local_best) {
                    out.push_back({n, lo, hi, value, norm});
                    local_best = std::max(local_best, lo);
                }
            }
        }
    };

    if (threads == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    ChampionResult res;
    double g = -std::numeric_limits<double>::infinity();
    for (const auto& chunk : chunks)
        for (const auto& c : chunk) {
            if (c.lo > g) {
                ChampionRecord rec;
                rec.n = c.n;
                rec.factorization = factorize(table, c.n).to_string();
                rec.stat = stat;
                rec.value = c.value;
                rec.normalizer = c.norm;
                rec.ratio = c.lo;
                rec.index = res.records.size();
                res.records.push_back(std::move(rec));
                g = c.lo;
            } else if (c.hi > g) {
                res.undecided.push_back(c.n);
            }
        }
    return res;
}

LemmaCheckReport davenport_distant_check(const PrimeTable& table,
                                         std::uint64_t p_start_min, std::size_t r_max) {
    constexpr double kSlack = 1e-12;
    std::uint64_t pts = 0, viol = 0;
    double worst = std::numeric_limits<double>::infinity();
    std::uint64_t min_safe = 0;
    std::ostringstream failures;

    for (std::uint64_t p : table.primes) {
        if (p > 97) break;
        bool clean = true;
        for (std::size_t r = 1; r <= r_max; ++r) {
            FactoredInteger n;
            try {
                n = build_distant_sequence(table, p, r);
            } catch (const std::out_of_range&) {
                break;  // doubly-exponential growth outran the table
            }
            const double margin =
                guarded_logloglog_from_log(n.log_of()) - davenport_w(n) + kSlack;
            if (margin < 0.0) {
                clean = false;
                failures << " p_start=" << p << ",r=" << r << " (margin " << margin
                         << ");";
            }
            if (p >= p_start_min) {
                ++pts;
                if (margin < 0.0) ++viol;
                if (margin < worst) worst = margin;
            }
        }
        if (clean && min_safe == 0) min_safe = p;
    }

    LemmaCheckReport rep;
    rep.lemma_id = "davenport_distant";
    std::ostringstream d;
    d << "distant sequences from every prime start in [2,97], r up to " << r_max
      << " while the table allows; asserted for p_start >= " << p_start_min
      << "; w(n) <= guarded_logloglog(n), slack 1e-12; smallest violation-free start: "
      << min_safe;
    if (failures.str().empty())
        d << "; no violating starts in the scan";
    else
        d << "; violations in the wider scan:" << failures.str();
    rep.grid_description = d.str();
    rep.points_checked = pts;
    rep.violations = viol;
    rep.worst_margin = pts ? worst : 0.0;
    return rep;
}

} // namespace ezd
