#include <cinttypes>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "ezdsum/arith.hpp"
#include "ezdsum/extremal.hpp"
#include "ezdsum/gcd_forms.hpp"
#include "ezdsum/suites.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolations = 1;
constexpr int kExitUsage = 2;

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(15);
    os << x;
    return os.str();
}

// --n accepts a plain integer or "nj:<j>" for the j-th extremal integer
ezd::FactoredInteger resolve_n(const std::string& spec, const ezd::PrimeTable& table) {
    if (spec.rfind("nj:", 0) == 0) {
        const unsigned j = static_cast<unsigned>(std::stoul(spec.substr(3)));
        return ezd::build_nj(table, j);
    }
    std::uint64_t n = 0;
    std::size_t pos = 0;
    n = std::stoull(spec, &pos);
    if (pos != spec.size()) throw std::invalid_argument("bad --n value: " + spec);
    return ezd::factorize(table, n);
}

void write_text(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << body;
    if (!out) throw std::runtime_error("write failed: " + path);
}

int cmd_eval(const std::string& n_spec, const std::string& stat_name, double eta, double u,
             std::uint64_t cap, std::uint64_t budget) {
    const auto stat = ezd::parse_stat(stat_name, eta, u);
    const std::uint64_t want_limit =
        n_spec.rfind("nj:", 0) == 0 ? 2000000 : std::max<std::uint64_t>(2000000, std::stoull(n_spec) + 1);
    if (want_limit > 100000001) throw std::invalid_argument("--n beyond the 1e8 sieve limit");
    const auto table = ezd::build_prime_table(want_limit);
    const auto f = resolve_n(n_spec, table);

    const double norm = ezd::stat_normalizer(f, stat);
    if (auto v = f.value_u64())
        std::cout << "n = " << *v << "\n";
    else
        std::cout << "n = " << f.to_string() << "\n";
    std::cout << "log n = " << fmt(f.log_of()) << "\n";
    std::cout << "stat = " << ezd::stat_name(stat) << "\n";
    std::cout << "normalizer = " << fmt(norm) << "\n";

    const auto dc = f.divisor_count_checked();
    const bool affordable = dc && *dc <= budget;
    if (stat.psi_based()) {
        const auto enc = ezd::ratio_enclosure(f, stat, cap);
        std::cout << "enclosure = [" << fmt(enc.lo) << ", " << fmt(enc.hi) << "]\n";
    }
    if (affordable || !stat.psi_based()) {
        const double ratio = ezd::normalized_ratio(f, stat, budget);
        std::cout << "value = " << fmt(ratio * norm) << "\n";
        std::cout << "ratio = " << fmt(ratio) << "\n";
    }
    return kExitOk;
}

int cmd_champions(const std::string& stat_name, std::uint64_t nmax, const std::string& out,
                  unsigned threads, std::uint64_t budget, double eta, double u) {
    const auto stat = ezd::parse_stat(stat_name, eta, u);
    const auto table = ezd::build_prime_table(std::max<std::uint64_t>(nmax + 1, 1000));
    const auto result = ezd::champion_search(table, nmax, stat, budget, threads);

    std::string body;
    for (const auto& rec : result.records) {
        json j;
        j["factorization"] = rec.factorization;
        j["index"] = rec.index;
        j["n"] = rec.n;
        j["normalizer"] = rec.normalizer;
        j["ratio"] = rec.ratio;
        j["stat"] = ezd::stat_name(rec.stat);
        j["value"] = rec.value;
        body += j.dump();
        body += '\n';
    }
    if (out.empty()) {
        std::cout << body;
    } else {
        write_text(out, body);
        std::cout << "wrote " << result.records.size() << " records to " << out;
    }
    if (out.empty())
        std::cout << "# " << result.records.size() << " records";
    std::cout << " (undecided: " << result.undecided.size() << ")\n";
    return kExitOk;
}

int cmd_verify(const std::string& suite, std::uint64_t max, unsigned trials,
               std::uint64_t seed, const std::string& out) {
    ezd::SuiteOptions opts;
    opts.max = max;
    opts.trials = trials;
    opts.seed = seed;
    const auto rep = ezd::run_suite(suite, opts);

    json checks = json::array();
    for (const auto& c : rep.checks) {
        json j;
        j["grid"] = c.grid_description;
        j["lemma_id"] = c.lemma_id;
        j["points"] = c.points_checked;
        j["violations"] = c.violations;
        j["worst_margin"] = c.worst_margin;
        checks.push_back(j);
    }
    json doc;
    doc["checks"] = checks;
    doc["suite"] = rep.suite;
    const std::string body = doc.dump(2) + "\n";
    if (out.empty())
        std::cout << body;
    else
        write_text(out, body);

    for (const auto& c : rep.checks) {
        std::cout << c.lemma_id << ": points=" << c.points_checked
                  << " violations=" << c.violations << " worst_margin=" << fmt(c.worst_margin)
                  << "\n";
        if (c.violations) std::cout << "  " << c.grid_description << "\n";
    }
    const auto total = rep.total_violations();
    std::cout << "suite " << rep.suite << ": " << total << " violations across "
              << rep.checks.size() << " checks\n";
    return total ? kExitViolations : kExitOk;
}

int cmd_extremal(const std::string& j_range, const std::string& stat_name, std::uint64_t cap,
                 const std::string& out, double eta, double u) {
    const auto stat = ezd::parse_stat(stat_name, eta, u);
    const auto dots = j_range.find("..");
    unsigned j_lo = 0, j_hi = 0;
    if (dots == std::string::npos) {
        j_lo = j_hi = static_cast<unsigned>(std::stoul(j_range));
    } else {
        j_lo = static_cast<unsigned>(std::stoul(j_range.substr(0, dots)));
        j_hi = static_cast<unsigned>(std::stoul(j_range.substr(dots + 2)));
    }
    const auto table = ezd::build_prime_table(2000000);
    const auto rows = ezd::trend_report(table, j_lo, j_hi, stat, cap);

    std::string body = "j,log_n,ratio,width\n";
    for (const auto& r : rows) {
        std::ostringstream os;
        os << r.j << "," << fmt(r.log_n) << "," << fmt(r.ratio) << "," << fmt(r.width) << "\n";
        body += os.str();
    }
    if (out.empty())
        std::cout << body;
    else {
        write_text(out, body);
        std::cout << "wrote " << rows.size() << " rows to " << out << "\n";
    }
    return kExitOk;
}

int cmd_gcdform(double s, double eta, unsigned trials, std::uint64_t kmax, std::size_t size,
                std::uint64_t seed, const std::string& out) {
    const auto rep = ezd::empirical_sharpness(seed, trials, s, eta, kmax, size);
    json doc;
    doc["argmax_K_summary"] = rep.argmax_summary;
    doc["eta"] = rep.eta;
    doc["max_ratio"] = rep.max_ratio;
    doc["s"] = rep.s;
    doc["trials"] = rep.trials;
    const std::string body = doc.dump(2) + "\n";
    if (out.empty())
        std::cout << body;
    else {
        write_text(out, body);
        std::cout << "wrote sharpness report to " << out << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"divisor-sum workbench: evaluation, champions, verification, trends"};
    app.require_subcommand(1);

    std::string n_spec, stat_name = "phi", out;
    double eta = 1.5, u = -1.0, s = 1.0;
    std::uint64_t cap = 1000000, budget = ezd::kDefaultBudget;
    std::uint64_t nmax = 100000, max_scan = 20000, seed = 1, kmax = 10000;
    unsigned threads = 1, trials = 200;
    std::size_t size = 100;
    std::string suite = "all", j_range = "1..4";

    auto* eval = app.add_subcommand("eval", "evaluate one statistic at one integer");
    eval->add_option("--n", n_spec, "integer, or nj:<j> for the j-th extremal integer")
        ->required();
    eval->add_option("--stat", stat_name, "statistic name");
    eval->add_option("--eta", eta, "exponent for the phi_eta family");
    eval->add_option("--u", u, "exponent for sigma");
    eval->add_option("--cap", cap, "divisor cap for enclosures");
    eval->add_option("--budget", budget, "full-enumeration divisor budget");

    auto* champ = app.add_subcommand("champions", "stream record-setting integers");
    champ->add_option("--stat", stat_name, "statistic name");
    champ->add_option("--nmax", nmax, "search bound")->required();
    champ->add_option("--out", out, "JSONL output path");
    champ->add_option("--threads", threads, "worker threads");
    champ->add_option("--budget", budget, "full-enumeration divisor budget");
    champ->add_option("--eta", eta, "exponent for the phi_eta family");
    champ->add_option("--u", u, "exponent for sigma");

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", suite, "identities | lemmas | gcd | all");
    verify->add_option("--max", max_scan, "upper end of the n-scans");
    verify->add_option("--trials", trials, "random trials");
    verify->add_option("--seed", seed, "rng seed");
    verify->add_option("--out", out, "JSON report path");

    auto* extremal = app.add_subcommand("extremal", "trend table over extremal integers");
    extremal->add_option("--j", j_range, "index range, e.g. 1..4");
    extremal->add_option("--stat", stat_name, "statistic name");
    extremal->add_option("--cap", cap, "divisor cap for truncated rows");
    extremal->add_option("--out", out, "CSV output path");
    extremal->add_option("--eta", eta, "exponent for the phi_eta family");
    extremal->add_option("--u", u, "exponent for sigma");

    auto* gcdform = app.add_subcommand("gcdform", "randomized sharpness scan of the GCD form");
    gcdform->add_option("--s", s, "form exponent in (0, 1]");
    gcdform->add_option("--eta", eta, "triple-log exponent, > 1");
    gcdform->add_option("--trials", trials, "number of random sets");
    gcdform->add_option("--kmax", kmax, "largest admissible key");
    gcdform->add_option("--size", size, "largest set size");
    gcdform->add_option("--seed", seed, "rng seed");
    gcdform->add_option("--out", out, "JSON report path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (const char* env = std::getenv("EZDSUM_THREADS")) {
        try {
            const unsigned long v = std::stoul(env);
            if (v == 0 || v > 1024) throw std::out_of_range("range");
            threads = static_cast<unsigned>(v);
        } catch (const std::exception&) {
            std::cerr << "error: EZDSUM_THREADS must be an integer in [1, 1024]\n";
            return kExitUsage;
        }
    }

    try {
        if (eval->parsed()) return cmd_eval(n_spec, stat_name, eta, u, cap, budget);
        if (champ->parsed()) return cmd_champions(stat_name, nmax, out, threads, budget, eta, u);
        if (verify->parsed()) return cmd_verify(suite, max_scan, trials, seed, out);
        if (extremal->parsed()) return cmd_extremal(j_range, stat_name, cap, out, eta, u);
        if (gcdform->parsed()) return cmd_gcdform(s, eta, trials, kmax, size, seed, out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
