#include "lnsieve/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <sstream>

#include <omp.h>

#include "lnsieve/errors.hpp"

namespace lnsieve {

using nlohmann::json;

const char* to_string(ParityMode m) {
    switch (m) {
    case ParityMode::even: return "even";
    case ParityMode::odd: return "odd";
    case ParityMode::both: return "both";
    }
    return "?";
}

ParityMode parse_parity_mode(const std::string& s) {
    if (s == "even") return ParityMode::even;
    if (s == "odd") return ParityMode::odd;
    if (s == "both") return ParityMode::both;
    throw DomainError("parity must be even, odd or both, got '" + s + "'");
}

const char* to_string(EliminationStatus s) {
    switch (s) {
    case EliminationStatus::eliminated: return "eliminated";
    case EliminationStatus::survives_zero: return "survives_zero";
    case EliminationStatus::survives_large: return "survives_large";
    }
    return "?";
}

// --- trace sets -----------------------------------------------------------------

namespace {

struct TraceTask {
    long chi;
    long mu;
    Parity parity;
};

std::vector<TraceTask> trace_tasks(const PrimeIdealM& P, const TraceSetOptions& opts) {
    if (P.p == 2 || P.p == P.q) throw DomainError("trace_set: prime " + P.str() + " divides 2q");
    std::set<long> chis;
    if (opts.chi_restriction) {
        for (long c : *opts.chi_restriction) chis.insert(((c % P.p) + P.p) % P.p);
    } else {
        for (long c = 0; c < P.p; ++c) chis.insert(c);
    }
    const long ord = multiplicative_order(P.q, P.p);
    std::vector<TraceTask> tasks;
    for (long chi : chis)
        for (long mu = 0; mu < ord; ++mu) {
            if (opts.parity != ParityMode::odd) tasks.push_back({chi, mu, Parity::even});
            if (opts.parity != ParityMode::even) tasks.push_back({chi, mu, Parity::odd});
        }
    return tasks;
}

// Adds the trace(s) of one residue class; returns true if it was additive.
bool add_class_trace(const PrimeIdealM& P, const TraceTask& t, const TraceSetOptions& opts, std::set<long>& out) {
    const LocalCurve C = qcurve_local(t.chi, t.mu, t.parity, P);
    if (C.reduction_type() == ReductionType::additive) {
        if (opts.include_additive) {
            out.insert(P.norm() + 1);
            out.insert(-(P.norm() + 1));
        }
        return true;
    }
    out.insert(reduction_trace(C));
    return false;
}

TraceSet empty_trace_set(const PrimeIdealM& P, const TraceSetOptions& opts) {
    TraceSet ts;
    ts.prime = P;
    ts.parity_mode = opts.parity;
    ts.restricted_chi = opts.chi_restriction;
    return ts;
}

}  // namespace

TraceSet trace_set_serial(const PrimeIdealM& P, const TraceSetOptions& opts) {
    TraceSet ts = empty_trace_set(P, opts);
    for (const TraceTask& t : trace_tasks(P, opts)) {
        ++ts.classes_seen;
        if (add_class_trace(P, t, opts, ts.values)) ++ts.additive_classes;
    }
    return ts;
}

TraceSet trace_set(const PrimeIdealM& P, const TraceSetOptions& opts) {
    TraceSet ts = empty_trace_set(P, opts);
    const std::vector<TraceTask> tasks = trace_tasks(P, opts);
    const long n = static_cast<long>(tasks.size());
    long additive = 0;
    std::exception_ptr err;
#pragma omp parallel reduction(+ : additive)
    {
        std::set<long> local;
#pragma omp for schedule(dynamic, 4)
        for (long i = 0; i < n; ++i) {
            try {
                if (add_class_trace(P, tasks[static_cast<size_t>(i)], opts, local)) ++additive;
            } catch (...) {
#pragma omp critical(lnsieve_trace_err)
                if (!err) err = std::current_exception();
            }
        }
#pragma omp critical(lnsieve_trace_merge)
        ts.values.insert(local.begin(), local.end());
    }
    if (err) std::rethrow_exception(err);
    ts.classes_seen = n;
    ts.additive_classes = additive;
    return ts;
}

mpz_class B_fp(const NewformClass& f, const TraceSet& A) {
    return A.prime.p * product_norm(f, A.prime.p, A.prime.q, A.values);
}

// --- classification -------------------------------------------------------------

EliminationRecord classify(const std::string& label, long dim, std::vector<PrimeContribution> per_prime,
                           long n_bound) {
    if (per_prime.empty()) throw DomainError("B_f: no auxiliary primes for " + label);
    EliminationRecord r;
    r.label = label;
    r.dim = dim;
    std::sort(per_prime.begin(), per_prime.end(), [](const auto& a, const auto& b) { return a.p < b.p; });
    r.per_prime = std::move(per_prime);
    mpz_class g = 0;
    for (const auto& c : r.per_prime) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.value.get_mpz_t());
    r.B = g;
    if (g == 0) {
        r.status = EliminationStatus::survives_zero;
        r.cofactor = 0;
        return r;
    }
    mpz_class rest = g;
    for (long d = 2; d < n_bound; ++d) {
        if (!is_prime(d)) continue;
        if (mpz_divisible_ui_p(rest.get_mpz_t(), static_cast<unsigned long>(d))) {
            r.small_factors.push_back(d);
            while (mpz_divisible_ui_p(rest.get_mpz_t(), static_cast<unsigned long>(d))) rest /= d;
        }
        if (rest == 1) break;
    }
    r.cofactor = rest;
    r.status = rest == 1 ? EliminationStatus::eliminated : EliminationStatus::survives_large;
    return r;
}

EliminationRecord B_f(const NewformClass& f, const std::vector<PrimeIdealM>& primes, long n_bound,
                      const TraceSetOptions& opts) {
    std::vector<PrimeContribution> per;
    for (const auto& P : primes) per.push_back({P.p, B_fp(f, trace_set_serial(P, opts))});
    return classify(f.label, f.dim, std::move(per), n_bound);
}

ExponentBound ExponentBound::for_q(long q) {
    require_supported_q(q);
    ExponentBound b{q, 1000, {}};
    for (const auto& [qq, x, k, y, n] : std::vector<std::tuple<long, long, long, long, long>>{
             {17, -71, 1, 2, 7}, {41, 13, 0, 2, 7}, {89, -91, 0, 2, 13}, {97, -15, 0, 2, 7}})
        if (qq == q) b.exceptions.push_back(Solution::make(qq, x, k, y, n));
    return b;
}

// --- sieve ----------------------------------------------------------------------

std::vector<PrimeIdealM> auxiliary_primes(const SieveConfig& cfg) {
    require_supported_q(cfg.q);
    std::vector<PrimeIdealM> out;
    for (long p = std::max(3L, cfg.p_min); p <= cfg.p_max; ++p)
        if (is_prime(p) && p != cfg.q) out.push_back(PrimeIdealM::above(p, cfg.q, cfg.conjugate));
    if (out.empty()) throw DomainError("no auxiliary primes in the requested range");
    return out;
}

long SieveReport::count(EliminationStatus s) const {
    return static_cast<long>(std::count_if(records.begin(), records.end(), [&](const auto& r) { return r.status == s; }));
}

std::vector<const EliminationRecord*> SieveReport::survivors() const {
    std::vector<const EliminationRecord*> out;
    for (const auto& r : records)
        if (r.status != EliminationStatus::eliminated) out.push_back(&r);
    return out;
}

const EliminationRecord* SieveReport::find(const std::string& label) const {
    for (const auto& r : records)
        if (r.label == label) return &r;
    return nullptr;
}

namespace {

std::vector<size_t> primes_for_class(const NewformClass& f, const SieveReport& rep, const SieveConfig& cfg) {
    std::vector<size_t> idx;
    for (size_t i = 0; i < rep.primes.size(); ++i) {
        if (f.dim >= cfg.large_dim &&
            std::find(cfg.large_dim_primes.begin(), cfg.large_dim_primes.end(), rep.primes[i].p) ==
                cfg.large_dim_primes.end())
            continue;
        idx.push_back(i);
    }
    if (idx.empty()) throw DomainError("no auxiliary primes apply to " + f.label);
    return idx;
}

SieveReport start_report(const NewformSpace& space, const SieveConfig& cfg, bool parallel) {
    if (space.q != cfg.q)
        throw DomainError("sieve configured for q=" + std::to_string(cfg.q) + " but data is for q=" +
                          std::to_string(space.q));
    SieveReport rep;
    rep.q = cfg.q;
    rep.n_bound = cfg.n_bound;
    rep.primes = auxiliary_primes(cfg);
    for (const auto& P : rep.primes) {
        rep.trace_sets.push_back(parallel ? trace_set(P, cfg.trace_opts) : trace_set_serial(P, cfg.trace_opts));
        const TraceSet& ts = rep.trace_sets.back();
        if (ts.values.empty())
            rep.flags.push_back("empty trace set at " + P.str() + " (inconsistent chi restriction?)");
        if (ts.additive_classes > 0)
            rep.flags.push_back(std::to_string(ts.additive_classes) + " additive residue classes " +
                                (cfg.trace_opts.include_additive ? "counted" : "skipped") + " at " + P.str());
    }
    return rep;
}

std::string conclude(const SieveReport& rep) {
    std::ostringstream os;
    const long elim = rep.count(EliminationStatus::eliminated);
    os << "q=" << rep.q << ": " << elim << " of " << rep.records.size() << " classes eliminated";
    long largest = 1;
    for (const auto& r : rep.records)
        if (r.status == EliminationStatus::eliminated) largest = std::max(largest, r.largest_small_factor());
    if (elim > 0) os << " (largest prime factor of an eliminating B_f: " << largest << ")";
    const auto surv = rep.survivors();
    if (!surv.empty()) {
        os << "; surviving:";
        for (const auto* r : surv)
            os << " " << r->label << (r->status == EliminationStatus::survives_zero ? " (B_f = 0)" : " (large factor)");
    }
    return os.str();
}

void finish_report(SieveReport& rep) {
    std::sort(rep.records.begin(), rep.records.end(), [](const auto& a, const auto& b) { return a.label < b.label; });
    rep.conclusion = conclude(rep);
}

}  // namespace

SieveReport run_sieve_serial(const NewformSpace& space, const SieveConfig& cfg) {
    SieveReport rep = start_report(space, cfg, false);
    for (const auto& f : space.classes) {
        std::vector<PrimeContribution> per;
        for (size_t i : primes_for_class(f, rep, cfg)) per.push_back({rep.primes[i].p, B_fp(f, rep.trace_sets[i])});
        rep.records.push_back(classify(f.label, f.dim, std::move(per), cfg.n_bound));
    }
    finish_report(rep);
    return rep;
}

SieveReport run_sieve(const NewformSpace& space, const SieveConfig& cfg) {
    SieveReport rep = start_report(space, cfg, true);
    struct Cell {
        size_t cls;
        size_t prime;
    };
    std::vector<Cell> grid;
    for (size_t c = 0; c < space.classes.size(); ++c)
        for (size_t i : primes_for_class(space.classes[c], rep, cfg)) grid.push_back({c, i});
    std::vector<mpz_class> values(grid.size());
    std::exception_ptr err;
    const long n = static_cast<long>(grid.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (long g = 0; g < n; ++g) {
        const Cell& cell = grid[static_cast<size_t>(g)];
        try {
            values[static_cast<size_t>(g)] = B_fp(space.classes[cell.cls], rep.trace_sets[cell.prime]);
        } catch (...) {
#pragma omp critical(lnsieve_sieve_err)
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    std::vector<std::vector<PrimeContribution>> per(space.classes.size());
    for (size_t g = 0; g < grid.size(); ++g)
        per[grid[g].cls].push_back({rep.primes[grid[g].prime].p, std::move(values[g])});
    for (size_t c = 0; c < space.classes.size(); ++c)
        rep.records.push_back(classify(space.classes[c].label, space.classes[c].dim, std::move(per[c]), cfg.n_bound));
    finish_report(rep);
    return rep;
}

// --- multi-Frey -----------------------------------------------------------------

namespace {

// Prime factors of a nonzero integer below `bound`; `rest` receives the cofactor.
std::vector<long> small_prime_factors(mpz_class v, long bound, mpz_class& rest) {
    std::vector<long> out;
    v = abs(v);
    for (long d = 2; d < bound && v != 1; ++d) {
        if (!is_prime(d) || !mpz_divisible_ui_p(v.get_mpz_t(), static_cast<unsigned long>(d))) continue;
        out.push_back(d);
        while (mpz_divisible_ui_p(v.get_mpz_t(), static_cast<unsigned long>(d))) v /= d;
    }
    rest = v;
    return out;
}

IntPoly linear_power(long root, long dim) {
    IntPoly out{1};
    const IntPoly lin{-root, 1};
    for (long i = 0; i < dim; ++i) out = out * lin;
    return out;
}

std::optional<long> single_root(const IntPoly& T) {
    const long d = T.degree();
    if (d < 1) return std::nullopt;
    const mpz_class s = -T.coeff(static_cast<size_t>(d - 1));
    if (!mpz_divisible_ui_p(s.get_mpz_t(), static_cast<unsigned long>(d))) return std::nullopt;
    const mpz_class t = s / d;
    if (!t.fits_slong_p() || !(linear_power(t.get_si(), d) == T)) return std::nullopt;
    return t.get_si();
}

}  // namespace

MultiFreyReport multi_frey(const NewformSpace& space, const SieveReport& sieve) {
    constexpr long q = 41;
    constexpr long p = 7;
    if (space.q != q || sieve.q != q) throw DomainError("multi_frey is defined for q = 41 only");
    MultiFreyReport rep;
    for (long kappa = 0; kappa <= 5; ++kappa) {
        std::vector<long> row;
        for (long chi = 0; chi < p; ++chi) row.push_back(reduction_trace(rational_frey_local(chi, kappa, q, p)));
        rep.g_traces.push_back(std::move(row));
    }
    rep.kappa_independent = std::all_of(rep.g_traces.begin(), rep.g_traces.end(), [&](const auto& r) { return r == rep.g_traces[0]; });
    rep.a7_F = rational_curve_ap(curve_F(q).curve, p);
    for (long chi = 0; chi < p; ++chi)
        if (std::all_of(rep.g_traces.begin(), rep.g_traces.end(), [&](const auto& r) { return r[chi] == rep.a7_F; }))
            rep.forced_chi.insert(chi);
    if (rep.forced_chi.empty()) throw Error("multi_frey: no residue class of x mod 7 matches a_7(F)");

    TraceSetOptions opts;
    opts.chi_restriction = rep.forced_chi;
    const TraceSet restricted = trace_set_serial(PrimeIdealM::above(p, q), opts);
    rep.restricted_traces = restricted.values;
    if (rep.restricted_traces.empty()) throw Error("multi_frey: restricted trace set is empty");

    // The divisibilities as printed, keyed by the survivor's t-value.
    const std::map<long, long> printed = {{-4, 70}, {14, 84}};
    bool all_small = true;
    for (const auto* r : sieve.survivors()) {
        if (r->status != EliminationStatus::survives_zero) {
            all_small = false;
            continue;
        }
        const NewformClass* f = space.find(r->label);
        if (!f) throw Error("multi_frey: survivor " + r->label + " missing from data");
        SurvivorAt7 s;
        s.label = r->label;
        s.t_charpoly = t_value_charpoly(*f, p, q);
        s.t = single_root(s.t_charpoly);
        s.exact_B = B_fp(*f, restricted);
        if (s.t && printed.count(*s.t)) {
            s.printed_divisor = printed.at(*s.t);
            s.literal_divides = s.exact_B != 0 && s.exact_B % s.printed_divisor == 0;
            mpz_class rest;
            const auto fac = small_prime_factors(s.exact_B, sieve.n_bound, rest);
            s.support_ok = s.exact_B != 0 && rest == 1 &&
                           std::all_of(fac.begin(), fac.end(), [&](long l) { return s.printed_divisor % l == 0; });
        }
        if (s.exact_B == 0) {
            all_small = false;
        } else {
            mpz_class rest;
            small_prime_factors(s.exact_B, sieve.n_bound, rest);
            if (rest != 1) all_small = false;
        }
        rep.survivors.push_back(std::move(s));
    }
    rep.contradiction = all_small && !rep.survivors.empty();
    std::ostringstream os;
    os << "a_7(F) = " << rep.a7_F << " forces x = ";
    for (long c : rep.forced_chi) os << c << " ";
    os << "(mod 7); restricted trace set {";
    bool first = true;
    for (long v : rep.restricted_traces) {
        os << (first ? "" : ", ") << v;
        first = false;
    }
    os << "}; ";
    for (const auto& s : rep.survivors) {
        os << s.label << ": n | " << s.exact_B.get_str();
        if (s.printed_divisor) os << " (printed: n | " << s.printed_divisor << ")";
        os << "; ";
    }
    os << (rep.contradiction ? "contradiction with n > " + std::to_string(sieve.n_bound)
                             : "no contradiction reached");
    rep.conclusion = os.str();
    return rep;
}

// --- obstruction ----------------------------------------------------------------

ObstructionReport obstruction_scan(const NewformSpace& space, const SieveReport& sieve, long p_limit) {
    ObstructionReport rep;
    rep.q = space.q;
    if (space.q != 17 && space.q != 89) throw DomainError("obstruction_scan is defined for q = 17 and 89");
    for (const auto& s : known_obstructing_solutions())
        if (s.q == space.q) rep.solution = s;
    for (const auto* r : sieve.survivors()) rep.survivors.push_back(r->label);
    const EliminationRecord* obstructing = nullptr;
    for (const auto* r : sieve.survivors())
        if (r->status == EliminationStatus::survives_zero) {
            if (obstructing) return rep;  // more than one: leave obstructing_label empty
            obstructing = r;
        }
    if (!obstructing) return rep;
    rep.obstructing_label = obstructing->label;
    const NewformClass& f = *space.find(obstructing->label);
    const QCurveModel E = qcurve_global(rep.solution);
    for (long p = 3; p < p_limit; ++p) {
        if (!is_prime(p) || p == space.q || !f.ap.count(p) || !f.ap.at(p).has_exact()) continue;
        const LocalCurve C = reduce_curve(E, PrimeIdealM::above(p, space.q));
        if (C.reduction_type() != ReductionType::good) continue;
        ++rep.primes_compared;
        if (!(t_value_charpoly(f, p, space.q) == linear_power(trace_of_frobenius(C), f.dim)))
            rep.mismatched_primes.push_back(p);
    }
    if (f.dim == 2) {
        // Some a_p generates a field of discriminant -8 * square.
        for (const auto& [p, d] : f.ap) {
            if (!d.has_exact()) continue;
            const IntPoly& C = *d.charpoly;
            const mpz_class disc = C.coeff(1) * C.coeff(1) - 4 * C.coeff(0);
            if (disc >= 0 || disc % 8 != 0) continue;
            const mpz_class k2 = -disc / 8;
            if (mpz_perfect_square_p(k2.get_mpz_t())) {
                rep.field_is_Q_sqrt_minus2 = true;
                break;
            }
        }
    }
    return rep;
}

// --- auxiliary checks -----------------------------------------------------------

HasseA3Report hasse_a3_check(long q) {
    const long a3 = rational_curve_ap(curve_F(q).curve, 3);
    HasseA3Report r{q, a3, 4 + a3, 4 - a3, false};
    const long double bound = 4 + 2 * std::sqrt(3.0L);
    r.ok = r.plus != 0 && r.minus != 0 && std::abs(r.plus) <= bound && std::abs(r.minus) <= bound && bound < 11;
    return r;
}

std::vector<PowerOfTwoHit> power_of_two_search(long q, long s_max, long n_max) {
    if (s_max < 1 || n_max < 3) throw DomainError("power_of_two_search: bounds must be positive (n_max >= 3)");
    std::vector<PowerOfTwoHit> out;
    for (long e = 3; e <= s_max * n_max; ++e) {
        mpz_class v;
        mpz_ui_pow_ui(v.get_mpz_t(), 2, static_cast<unsigned long>(e));
        v += q;
        if (!mpz_perfect_square_p(v.get_mpz_t())) continue;
        mpz_class x;
        mpz_sqrt(x.get_mpz_t(), v.get_mpz_t());
        for (long n = 3; n <= n_max; ++n)
            if (e % n == 0 && e / n <= s_max) out.push_back({x.get_si(), e / n, n});
    }
    return out;
}

namespace {

// y with y^n = v exactly, if any (|v| < 2^63).
std::optional<long> exact_root(long long v, long n) {
    if (v < 0 && n % 2 == 0) return std::nullopt;
    const long double a = std::fabs(static_cast<long double>(v));
    const long long guess = std::llround(std::pow(a, 1.0L / n));
    for (long long r = std::max(0LL, guess - 1); r <= guess + 1; ++r) {
        __int128 pw = 1;
        for (long i = 0; i < n && pw <= static_cast<__int128>(a) + 1; ++i) pw *= r;
        if (pw == static_cast<__int128>(v < 0 ? -v : v)) return v < 0 ? -r : r;
    }
    return std::nullopt;
}

long long ipow(long long b, long e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

void sweep_x(long q, long long x, std::vector<SolutionTuple>& out) {
    for (long k = 0; k <= 2; ++k) {
        const long long v = x * x - ipow(q, 2 * k + 1);
        if (v == 0) continue;
        for (long n = 3; n <= 11; ++n) {
            const auto y = exact_root(v, n);
            if (!y) continue;
            if (std::gcd(x, static_cast<long long>(*y)) != 1) continue;
            out.push_back({q, static_cast<long>(x), *y, k, n});
        }
    }
}

bool tuple_less(const SolutionTuple& a, const SolutionTuple& b) {
    return std::tie(a.q, a.x, a.k, a.n, a.y) < std::tie(b.q, b.x, b.k, b.n, b.y);
}

bool tuple_eq(const SolutionTuple& a, const SolutionTuple& b) {
    return a.q == b.q && a.x == b.x && a.y == b.y && a.k == b.k && a.n == b.n;
}

SweepReport sweep_finish(std::vector<SolutionTuple> found, long x_max) {
    SweepReport rep;
    rep.x_max = x_max;
    for (const auto& t : listed_tuples()) {
        mpz_class lhs = mpz_class(t.x) * t.x, qk, yn;
        mpz_ui_pow_ui(qk.get_mpz_t(), static_cast<unsigned long>(t.q), static_cast<unsigned long>(2 * t.k + 1));
        mpz_pow_ui(yn.get_mpz_t(), mpz_class(t.y).get_mpz_t(), static_cast<unsigned long>(t.n));
        const bool ok = lhs - qk == yn && std::gcd(t.x, t.y) == 1 && t.x >= 0 && t.k >= 0 && t.n >= 3;
        (ok ? rep.listed_ok : rep.listed_bad).push_back(t);
    }
    std::sort(found.begin(), found.end(), tuple_less);
    rep.found = std::move(found);
    for (const auto& f : rep.found) {
        const bool listed = std::any_of(listed_tuples().begin(), listed_tuples().end(),
                                        [&](const auto& t) { return tuple_eq(t, f); });
        if (!listed) rep.extra.push_back(f);
    }
    // Listed tuples inside the sweep range must have been found.
    for (const auto& t : listed_tuples())
        if (t.x <= x_max && t.k <= 2 && t.n <= 11 &&
            !std::any_of(rep.found.begin(), rep.found.end(), [&](const auto& f) { return tuple_eq(t, f); }))
            rep.listed_bad.push_back(t);
    return rep;
}

}  // namespace

namespace {

// x^2 = y^n + q^(2k+1) with 0 <= x <= x_max, enumerating y. Since
// |y|^n <= x_max^2 + q^(2k+1) the y-range is small.
void sweep_y(long q, long k, long n, long long y, long x_max, std::vector<SolutionTuple>& out) {
    const __int128 t = static_cast<__int128>(ipow(y, n)) + ipow(q, 2 * k + 1);
    if (t < 0 || y == 0) return;
    const long long x = std::llround(std::sqrt(static_cast<long double>(t)));
    for (long long c = std::max(0LL, x - 1); c <= x + 1; ++c)
        if (static_cast<__int128>(c) * c == t && c <= x_max && std::gcd(c, y) == 1)
            out.push_back({q, static_cast<long>(c), static_cast<long>(y), k, n});
}

struct SweepRange {
    long q, k, n;
    long long y_max;
};

std::vector<SweepRange> sweep_ranges(long x_max) {
    std::vector<SweepRange> out;
    for (long q : {41L, 97L})
        for (long k = 0; k <= 2; ++k)
            for (long n = 3; n <= 11; ++n) {
                const long double bound = static_cast<long double>(x_max) * x_max + std::pow(static_cast<long double>(q), 2 * k + 1);
                out.push_back({q, k, n, static_cast<long long>(std::pow(bound, 1.0L / n)) + 1});
            }
    return out;
}

}  // namespace

std::vector<SolutionTuple> sweep_bruteforce(long x_max) {
    std::vector<SolutionTuple> found;
    for (long q : {41L, 97L})
        for (long long x = 0; x <= x_max; ++x) sweep_x(q, x, found);
    std::sort(found.begin(), found.end(), tuple_less);
    return found;
}

SweepReport verify_listed_serial(long x_max) {
    std::vector<SolutionTuple> found;
    for (const auto& r : sweep_ranges(x_max))
        for (long long y = -r.y_max; y <= r.y_max; ++y) sweep_y(r.q, r.k, r.n, y, x_max, found);
    return sweep_finish(std::move(found), x_max);
}

SweepReport verify_listed(long x_max) {
    std::vector<SolutionTuple> found;
    for (const auto& r : sweep_ranges(x_max)) {
#pragma omp parallel
        {
            std::vector<SolutionTuple> local;
#pragma omp for schedule(static)
            for (long long y = -r.y_max; y <= r.y_max; ++y) sweep_y(r.q, r.k, r.n, y, x_max, local);
#pragma omp critical(lnsieve_sweep_merge)
            found.insert(found.end(), local.begin(), local.end());
        }
    }
    return sweep_finish(std::move(found), x_max);
}

// --- output ---------------------------------------------------------------------

namespace {

json prime_json(const PrimeIdealM& P) {
    json j{{"p", P.p}, {"kind", to_string(P.kind)}, {"norm", P.norm()}, {"label", P.str()}};
    if (P.kind == SplitKind::split) j["sqrt_q_mod_p"] = P.root;
    return j;
}

}  // namespace

json to_json(const SieveReport& r) {
    json primes = json::array();
    for (const auto& P : r.primes) primes.push_back(prime_json(P));
    json sets = json::array();
    for (const auto& ts : r.trace_sets) {
        json j{{"p", ts.prime.p}, {"values", ts.values}, {"classes", ts.classes_seen},
               {"additive_classes", ts.additive_classes}, {"parity", to_string(ts.parity_mode)}};
        if (ts.restricted_chi) j["chi_restriction"] = *ts.restricted_chi;
        sets.push_back(std::move(j));
    }
    json records = json::array();
    for (const auto& e : r.records) {
        json per = json::array();
        for (const auto& c : e.per_prime) per.push_back({{"p", c.p}, {"B", c.value.get_str()}});
        records.push_back({{"label", e.label},
                           {"dim", e.dim},
                           {"per_prime", std::move(per)},
                           {"B_f", e.B.get_str()},
                           {"small_factors", e.small_factors},
                           {"cofactor", e.cofactor.get_str()},
                           {"status", to_string(e.status)}});
    }
    return json{{"q", r.q},          {"n_bound", r.n_bound},          {"primes", std::move(primes)},
                {"trace_sets", sets}, {"records", std::move(records)}, {"flags", r.flags},
                {"conclusion", r.conclusion}};
}

std::string to_text(const SieveReport& r) {
    std::ostringstream os;
    os << "q = " << r.q << ", level " << 2 * r.q * r.q << ", n_bound " << r.n_bound << "\n";
    os << "auxiliary primes:";
    for (const auto& P : r.primes) os << " " << P.p << (P.kind == SplitKind::inert ? "i" : "s");
    os << "\n";
    for (const auto& ts : r.trace_sets) {
        os << "  A(" << ts.prime.p << ") = {";
        bool first = true;
        for (long v : ts.values) {
            os << (first ? "" : ", ") << v;
            first = false;
        }
        os << "}\n";
    }
    for (const auto& e : r.records) {
        os << e.label << " (dim " << e.dim << "): " << to_string(e.status);
        if (e.status == EliminationStatus::survives_zero) {
            os << ", B_f = 0";
        } else {
            os << ", B_f prime factors {";
            for (size_t i = 0; i < e.small_factors.size(); ++i) os << (i ? ", " : "") << e.small_factors[i];
            os << "}";
            if (e.cofactor != 1) os << " x cofactor with digits " << e.cofactor.get_str().size();
        }
        os << "\n";
    }
    for (const auto& f : r.flags) os << "note: " << f << "\n";
    os << r.conclusion << "\n";
    return os.str();
}

json to_json(const MultiFreyReport& r) {
    json surv = json::array();
    for (const auto& s : r.survivors) {
        json j{{"label", s.label},
               {"t_charpoly", s.t_charpoly.str()},
               {"exact_B", s.exact_B.get_str()},
               {"printed_divisor", s.printed_divisor},
               {"literal_divides", s.literal_divides},
               {"prime_support_ok", s.support_ok}};
        if (s.t) j["t"] = *s.t;
        surv.push_back(std::move(j));
    }
    return json{{"g_traces", r.g_traces},
                {"kappa_independent", r.kappa_independent},
                {"a7_F", r.a7_F},
                {"forced_chi", r.forced_chi},
                {"restricted_traces", r.restricted_traces},
                {"survivors", std::move(surv)},
                {"contradiction", r.contradiction},
                {"conclusion", r.conclusion}};
}

json to_json(const ObstructionReport& r) {
    return json{{"q", r.q},
                {"survivors", r.survivors},
                {"obstructing", r.obstructing_label},
                {"solution", r.solution.str()},
                {"primes_compared", r.primes_compared},
                {"mismatched_primes", r.mismatched_primes},
                {"coefficient_field_Q_sqrt_minus2", r.field_is_Q_sqrt_minus2},
                {"ok", r.ok()}};
}

}  // namespace lnsieve
