#pragma once

// Newform elimination: trace sets of the Frey Q-curve at auxiliary primes,
// the integers B_{f,P} and B_f, classification against the exponent bound,
// and the auxiliary arguments (multi-Frey at 7 for q = 41, a_3 bound,
// powers of two, bounded sweep).

#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "lnsieve/frey.hpp"
#include "lnsieve/newform.hpp"
#include "lnsieve/quadfield.hpp"

namespace lnsieve {

enum class ParityMode { even, odd, both };

const char* to_string(ParityMode m);
ParityMode parse_parity_mode(const std::string& s);

struct TraceSetOptions {
    ParityMode parity = ParityMode::both;
    std::optional<std::set<long>> chi_restriction;
    /// Count additive residue classes as +-(N+1) instead of skipping them.
    bool include_additive = false;
};

struct TraceSet {
    PrimeIdealM prime;
    ParityMode parity_mode = ParityMode::both;
    std::set<long> values;
    std::optional<std::set<long>> restricted_chi;
    long classes_seen = 0;
    long additive_classes = 0;
};

/// Union of reduction traces of E_{chi,mu} mod P over chi in [0, p), mu in
/// [0, ord_p(q)) and the selected parities. P must not divide 2q.
TraceSet trace_set(const PrimeIdealM& P, const TraceSetOptions& opts = {});
/// Single-threaded reference for trace_set.
TraceSet trace_set_serial(const PrimeIdealM& P, const TraceSetOptions& opts = {});

/// p * Norm prod_{a in A} (a - t_{f,P}).
mpz_class B_fp(const NewformClass& f, const TraceSet& A);

enum class EliminationStatus { eliminated, survives_zero, survives_large };

const char* to_string(EliminationStatus s);

struct PrimeContribution {
    long p;
    mpz_class value;
};

struct EliminationRecord {
    std::string label;
    long dim = 0;
    std::vector<PrimeContribution> per_prime;
    mpz_class B;
    /// Prime factors of B below the bound, with multiplicity collapsed.
    std::vector<long> small_factors;
    /// B with all factors below the bound removed (1 when fully factored).
    mpz_class cofactor = 1;
    EliminationStatus status = EliminationStatus::survives_zero;

    long largest_small_factor() const { return small_factors.empty() ? 1 : small_factors.back(); }
};

/// gcd of the contributions, trial-factored below n_bound and classified.
EliminationRecord classify(const std::string& label, long dim, std::vector<PrimeContribution> per_prime,
                           long n_bound);

/// B_f over the given primes (trace sets are computed here).
EliminationRecord B_f(const NewformClass& f, const std::vector<PrimeIdealM>& primes, long n_bound = 1000,
                      const TraceSetOptions& opts = {});

/// Exponent bound: either n > n_bound or the solution is one of the listed exceptions.
struct ExponentBound {
    long q;
    long n_bound = 1000;
    std::vector<Solution> exceptions;

    static ExponentBound for_q(long q);
};

struct SieveConfig {
    long q = 0;
    long p_min = 3;
    long p_max = 30;
    long n_bound = 1000;
    TraceSetOptions trace_opts;
    /// Use the conjugate prime above each split p.
    bool conjugate = false;
    /// Classes of at least this dimension only use `large_dim_primes`.
    long large_dim = 168;
    std::vector<long> large_dim_primes = {3, 11};
};

/// Auxiliary primes of M: one above each rational prime in [p_min, p_max]
/// not dividing 2q.
std::vector<PrimeIdealM> auxiliary_primes(const SieveConfig& cfg);

struct SieveReport {
    long q = 0;
    long n_bound = 0;
    std::vector<PrimeIdealM> primes;
    std::vector<TraceSet> trace_sets;
    /// Sorted by label.
    std::vector<EliminationRecord> records;
    std::vector<std::string> flags;
    std::string conclusion;

    long count(EliminationStatus s) const;
    std::vector<const EliminationRecord*> survivors() const;
    const EliminationRecord* find(const std::string& label) const;
};

/// The (class x prime) grid evaluated in parallel; results are independent of
/// the thread count.
SieveReport run_sieve(const NewformSpace& space, const SieveConfig& cfg);
SieveReport run_sieve_serial(const NewformSpace& space, const SieveConfig& cfg);

// --- multi-Frey at p = 7 for q = 41 -------------------------------------------------

struct SurvivorAt7 {
    std::string label;
    IntPoly t_charpoly;
    /// Common root when t_charpoly is (x - t)^dim.
    std::optional<long> t;
    mpz_class exact_B;
    long printed_divisor = 0;
    bool literal_divides = false;
    bool support_ok = false;
};

struct MultiFreyReport {
    /// g_traces[kappa][chi] for kappa in [0, 5].
    std::vector<std::vector<long>> g_traces;
    bool kappa_independent = false;
    long a7_F = 0;
    std::set<long> forced_chi;
    std::set<long> restricted_traces;
    std::vector<SurvivorAt7> survivors;
    bool contradiction = false;
    std::string conclusion;
};

/// Requires q = 41 and the sieve report of the same space.
MultiFreyReport multi_frey(const NewformSpace& space, const SieveReport& sieve);

// --- obstruction -------------------------------------------------------------------

struct ObstructionReport {
    long q = 0;
    std::vector<std::string> survivors;
    std::string obstructing_label;
    Solution solution{};
    long primes_compared = 0;
    std::vector<long> mismatched_primes;
    bool field_is_Q_sqrt_minus2 = false;

    bool ok() const {
        return survivors.size() == 1 && !obstructing_label.empty() && primes_compared > 0 &&
               mismatched_primes.empty() && field_is_Q_sqrt_minus2;
    }
};

/// For q in {17, 89}: the surviving class must have t_{f,P} = a_P(E) for the
/// obstructing solution at every good prime below p_limit.
ObstructionReport obstruction_scan(const NewformSpace& space, const SieveReport& sieve, long p_limit = 100);

// --- small auxiliary checks --------------------------------------------------------

struct HasseA3Report {
    long q;
    long a3;
    long plus;   // 4 + a3
    long minus;  // 4 - a3
    bool ok;
};

/// n | 4 +- a_3(F_q) with both sides nonzero and below 4 + 2 sqrt 3 < 11.
HasseA3Report hasse_a3_check(long q);

struct PowerOfTwoHit {
    long x;
    long s;
    long n;
    friend bool operator==(const PowerOfTwoHit&, const PowerOfTwoHit&) = default;
};

/// x^2 = 2^(n s) + q with x > 0, 1 <= s <= s_max, 3 <= n <= n_max.
std::vector<PowerOfTwoHit> power_of_two_search(long q, long s_max, long n_max);

struct SweepReport {
    std::vector<SolutionTuple> listed_ok;
    std::vector<SolutionTuple> listed_bad;
    /// Everything the sweep found, q in {41, 97}, x >= 0.
    std::vector<SolutionTuple> found;
    std::vector<SolutionTuple> extra;
    long x_max = 0;

    bool ok() const { return listed_bad.empty() && extra.empty() && listed_ok.size() == listed_tuples().size(); }
};

/// Checks the listed tuples, then finds every solution with 0 <= x <= x_max,
/// 0 <= k <= 2, 3 <= n <= 11 for q in {41, 97} by enumerating y.
SweepReport verify_listed(long x_max = 1000000);
SweepReport verify_listed_serial(long x_max = 1000000);
/// The same solution set by direct enumeration of x (slow; an oracle).
std::vector<SolutionTuple> sweep_bruteforce(long x_max);

// --- output ------------------------------------------------------------------------

nlohmann::json to_json(const SieveReport& r);
std::string to_text(const SieveReport& r);
nlohmann::json to_json(const MultiFreyReport& r);
nlohmann::json to_json(const ObstructionReport& r);

}  // namespace lnsieve
