// lnsieve: newform elimination for x^2 - q^(2k+1) = y^n, q in {17, 41, 89, 97}.
//
//   lnsieve eliminate --q 41 --primes 3..30
//   lnsieve eliminate --q 97 --snapshot newforms_q97.json --format text
//   lnsieve verify
//   lnsieve fetch --q 17
//
// Exit codes: 0 ok, 1 usage or internal error, 2 data unavailable,
// 3 outcome mismatch or failed check, 4 invalid data.

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <iostream>
#include <optional>
#include <sstream>

#include <omp.h>

#include "lnsieve/errors.hpp"
#include "lnsieve/lmfdb.hpp"
#include "lnsieve/outcome.hpp"
#include "lnsieve/sieve.hpp"
#include "lnsieve/verify.hpp"

using namespace lnsieve;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kError = 1, kNoData = 2, kMismatch = 3, kInvalid = 4 };

struct RunConfig {
    long q = 0;
    std::string primes = "3..30";
    long n_bound = 1000;
    std::string parity = "both";
    std::string snapshot;
    bool offline = false;
    std::string out;
    std::string format = "json";
    std::string chi_restrict;
    bool include_additive = false;
    bool conjugate = false;
    std::string summary_check = "warn";
    std::string cache_dir;
    std::string expected;
    long p_limit = 100;
    long x_max = 1000000;
    int threads = 0;
    bool serial = false;
};

std::pair<long, long> parse_range(const std::string& s) {
    const auto dots = s.find("..");
    try {
        if (dots == std::string::npos) throw std::invalid_argument(s);
        return {std::stol(s.substr(0, dots)), std::stol(s.substr(dots + 2))};
    } catch (const std::logic_error&) {
        throw DomainError("--primes expects A..B, got '" + s + "'");
    }
}

std::set<long> parse_list(const std::string& s) {
    std::set<long> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.insert(std::stol(item));
    return out;
}

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

AcquireOptions acquire_options(const RunConfig& c) {
    AcquireOptions a;
    a.q = c.q;
    if (!c.snapshot.empty()) a.snapshot = c.snapshot;
    a.offline = c.offline;
    if (!c.cache_dir.empty()) a.cache_dir = c.cache_dir;
    if (c.summary_check == "error") a.snapshot_opts.summary_check = SummaryCheck::error;
    else if (c.summary_check == "ignore") a.snapshot_opts.summary_check = SummaryCheck::ignore;
    else if (c.summary_check != "warn") throw DomainError("--summary-check must be warn, error or ignore");
    return a;
}

void emit(const RunConfig& c, const std::string& content) {
    if (c.out.empty()) {
        std::cout << content;
    } else {
        write_file_atomic(c.out, content);
        std::cerr << "report written to " << c.out << "\n";
    }
}

int cmd_eliminate(const RunConfig& c) {
    if (c.format != "json" && c.format != "text") throw DomainError("--format must be json or text");
    const AcquiredSpace data = acquire_space(acquire_options(c));
    for (const auto& w : data.warnings) std::cerr << "warning: " << w << "\n";

    SieveConfig cfg;
    cfg.q = c.q;
    std::tie(cfg.p_min, cfg.p_max) = parse_range(c.primes);
    cfg.n_bound = c.n_bound;
    cfg.trace_opts.parity = parse_parity_mode(c.parity);
    if (!c.chi_restrict.empty()) cfg.trace_opts.chi_restriction = parse_list(c.chi_restrict);
    cfg.trace_opts.include_additive = c.include_additive;
    cfg.conjugate = c.conjugate;
    const SieveReport rep = c.serial ? run_sieve_serial(data.space, cfg) : run_sieve(data.space, cfg);

    std::optional<MultiFreyReport> multi;
    std::optional<ObstructionReport> obstruction;
    if (c.q == 41 && rep.count(EliminationStatus::survives_zero) > 0) multi = multi_frey(data.space, rep);
    if (c.q == 17 || c.q == 89) obstruction = obstruction_scan(data.space, rep, c.p_limit);

    const bool default_run = c.primes == "3..30" && c.n_bound == 1000 && c.parity == "both" && c.chi_restrict.empty() &&
                             !c.include_additive;
    std::optional<Grade> grade;
    if (default_run) {
        const std::string fixture = c.expected.empty() ? (default_data_dir() / "expected_outcomes.json").string() : c.expected;
        grade = grade_outcome(load_expected_outcomes(fixture), rep, multi ? &*multi : nullptr,
                              obstruction ? &*obstruction : nullptr);
    }

    if (c.format == "json") {
        json doc = to_json(rep);
        doc["level"] = 2 * c.q * c.q;
        doc["data_source"] = data.source;
        doc["warnings"] = data.warnings;
        if (multi) doc["multi_frey"] = to_json(*multi);
        if (obstruction) doc["obstruction"] = to_json(*obstruction);
        if (grade) doc["expected_outcome"] = {{"reproduced", grade->ok}, {"mismatches", grade->mismatches}};
        else doc["expected_outcome"] = {{"reproduced", nullptr}, {"note", "non-default configuration, not graded"}};
        doc["timestamp"] = utc_now();
        emit(c, doc.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << to_text(rep);
        if (multi) os << "multi-Frey: " << multi->conclusion << "\n";
        if (obstruction)
            os << "obstruction: " << (obstruction->ok() ? obstruction->obstructing_label + " matches " + obstruction->solution.str()
                                                         : std::string("not identified"))
               << " (" << obstruction->primes_compared << " primes compared)\n";
        if (grade) {
            os << "expected outcome " << (grade->ok ? "reproduced" : "NOT reproduced") << "\n";
            for (const auto& m : grade->mismatches) os << "  " << m << "\n";
        }
        os << "generated " << utc_now() << "\n";
        emit(c, os.str());
    }
    return grade && !grade->ok ? kMismatch : kOk;
}

int cmd_verify(const RunConfig& c) {
    VerifyOptions opts;
    opts.sweep_x_max = c.x_max;
    bool ok = true;
    std::ostringstream os;
    for (const auto& r : run_verify_suite(opts)) {
        os << (r.ok ? "PASS " : "FAIL ") << r.name;
        if (!r.detail.empty()) os << ": " << r.detail;
        os << "\n";
        ok = ok && r.ok;
    }
    emit(c, os.str());
    return ok ? kOk : kMismatch;
}

int cmd_fetch(const RunConfig& c) {
    AcquireOptions a = acquire_options(c);
    const AcquiredSpace data = acquire_space(a);
    for (const auto& w : data.warnings) std::cerr << "warning: " << w << "\n";
    const SpaceCache cache(a.cache_dir ? *a.cache_dir : default_cache_dir());
    if (data.source == "snapshot") cache.store(data.space, a.client.p_max);
    const SpaceSummary got = data.space.summary();
    const SpaceSummary want = published_summary(c.q);
    std::cout << "source: " << data.source << "\n"
              << "cache: " << cache.entry_path(c.q, a.client.p_max).string() << "\n"
              << "fetched:  " << got.str() << "\n"
              << "expected: " << want.str() << "\n"
              << (got == want ? "summary matches" : "summary MISMATCH") << "\n";
    return got == want ? kOk : kInvalid;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Newform elimination for x^2 - q^(2k+1) = y^n"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "Key = value config file (command-line flags override it)");

    RunConfig c;
    app.add_option("--q", c.q, "q in {17, 41, 89, 97}")->check(CLI::IsMember({17L, 41L, 89L, 97L}));
    app.add_option("--primes", c.primes, "Rational primes A..B below the auxiliary primes")->capture_default_str();
    app.add_option("--n-bound", c.n_bound, "Exponent bound: n > n_bound")->capture_default_str();
    app.add_option("--parity", c.parity, "Parity of k: even, odd or both")->capture_default_str();
    app.add_option("--snapshot", c.snapshot, "Newform snapshot JSON (required for q = 89, 97)");
    app.add_flag("--offline", c.offline, "Never use the network");
    app.add_option("--out", c.out, "Write the report here (atomically) instead of stdout");
    app.add_option("--format", c.format, "json or text")->capture_default_str();
    app.add_option("--chi-restrict", c.chi_restrict, "Comma-separated residues of x mod p");
    app.add_flag("--include-additive", c.include_additive, "Count additive residue classes as +-(N+1)");
    app.add_flag("--conjugate", c.conjugate, "Use the conjugate prime above each split p");
    app.add_option("--summary-check", c.summary_check, "Newform summary mismatch: warn, error or ignore")->capture_default_str();
    app.add_option("--cache-dir", c.cache_dir, "Cache directory (default $LNSIEVE_CACHE_DIR or ~/.cache/lnsieve)");
    app.add_option("--expected", c.expected, "Expected-outcome fixture");
    app.add_option("--p-limit", c.p_limit, "Obstruction scan compares traces below this prime")->capture_default_str();
    app.add_option("--x-max", c.x_max, "Sweep bound for verify")->capture_default_str();
    app.add_option("--threads", c.threads, "OpenMP threads (0 = runtime default)");
    app.add_flag("--serial", c.serial, "Use the single-threaded reference sieve");

    auto* elim = app.add_subcommand("eliminate", "Run the sieve and grade against the expected outcome");
    auto* verify = app.add_subcommand("verify", "Run the identity and invariant suite");
    auto* fetch = app.add_subcommand("fetch", "Populate the cache and compare the newform summary");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kError;
    }
    if (c.threads > 0) omp_set_num_threads(c.threads);
    try {
        if ((elim->parsed() || fetch->parsed()) && c.q == 0) throw DomainError("--q is required");
        if (elim->parsed()) return cmd_eliminate(c);
        if (verify->parsed()) return cmd_verify(c);
        if (fetch->parsed()) return cmd_fetch(c);
    } catch (const DataUnavailable& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNoData;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
    return kError;
}
