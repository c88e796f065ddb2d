#pragma once

// The two Frey-Hellegouarch families attached to x^2 - q^(2k+1) = y^n:
//
//   G_{x,k,q}: Y^2 = X^3 + 4x X^2 + 4(x^2 - q^(2k+1)) X        over Q
//   E_{x,m,q}: Y^2 = X^3 + 2 gamma q^(m+1) X^2 + gamma^2 w X   over Q(sqrt q)
//
// with k = 2m or 2m + 1 and w = ((x + q^k sqrt q)/2) * sqrt(q)^3 (k even)
// or ((x + q^k sqrt q)/2) * sqrt(q) (k odd), so that w + conj(w) = q^(2m+2).

#include <string>
#include <vector>

#include "lnsieve/local_curve.hpp"
#include "lnsieve/quadfield.hpp"

namespace lnsieve {

enum class Parity { even, odd };

const char* to_string(Parity p);

/// A solution of x^2 - q^(2k+1) = y^n with y even, gcd(x, y) = 1, q not
/// dividing x. The sign of x is normalized to x = 1 (mod 4).
struct Solution {
    long q;
    Int x;
    long k;
    Int y;
    long n;

    /// Validates the equation and side conditions, then normalizes x.
    static Solution make(long q, const Int& x, long k, const Int& y, long n);

    long m() const { return k / 2; }
    Parity parity() const { return k % 2 == 0 ? Parity::even : Parity::odd; }
    std::string str() const;
};

/// The four identities 23^2 - 17 = 2^9, 13^2 - 41 = 2^7, 91^2 - 89 = 2^13,
/// 15^2 - 97 = 2^7, normalized.
std::vector<Solution> known_obstructing_solutions();

/// Known solutions for q in {41, 97} with x >= 0 as listed.
struct SolutionTuple {
    long q;
    long x;
    long y;
    long k;
    long n;
};
const std::vector<SolutionTuple>& listed_tuples();

// --- rational curve G --------------------------------------------------------

RationalCurve rational_frey_global(const Solution& s);

/// G_{chi,kappa} reduced mod p: a2 = 4 chi, a4 = 4(chi^2 - q^(2 kappa + 1)).
LocalCurve rational_frey_local(long chi, long kappa, long q, long p);

/// The conductor-2q curve F_q and its Cremona label.
struct CurveF {
    long q;
    std::string label;
    RationalCurve curve;
};
CurveF curve_F(long q);

// --- Q-curve E ---------------------------------------------------------------

QuadInt w_global(const Solution& s);

/// w reduced mod P for the residue class x = chi, m = mu of the given parity.
ResidueElt w_value(long chi, long mu, Parity parity, const PrimeIdealM& P);

/// E_{chi,mu} reduced mod P (P not above 2q).
LocalCurve qcurve_local(long chi, long mu, Parity parity, const PrimeIdealM& P);

struct QCurveModel {
    long q;
    long m;
    QuadInt w;
    QuadInt a2;
    QuadInt a4;
    Invariants<QuadInt> inv;

    /// The Galois conjugate model (gamma -> gamma-bar, w -> w-bar).
    QCurveModel conj() const;
};

QCurveModel qcurve_global(const Solution& s);

/// Reduction of a global model mod P (P not above 2).
LocalCurve reduce_curve(const QCurveModel& E, const PrimeIdealM& P);

// --- decomposition (x + q^k sqrt q)/2 = delta^r gamma^(n-2) alpha^n ------------

struct Decomposition {
    long r;
    QuadInt alpha;
};

struct DecomposeOptions {
    long r_max = 50;
    Int box = 1000000;
};

/// Smallest |r| (then lexicographically smallest alpha) in the search window.
/// Throws SearchExhausted when the window holds no decomposition.
Decomposition decompose_solution(const Solution& s, const DecomposeOptions& opts = {});

/// q^k sqrt q = delta^r gamma^(n-2) alpha^n - conj(...), checked exactly.
bool check_difference_identity(const Solution& s, const Decomposition& d);

// --- conductor / valuation claims ------------------------------------------------

struct ValuationCheck {
    std::string name;
    std::string expected;
    long actual;
    bool ok;
};

struct ValuationReport {
    Solution solution;
    Decomposition decomposition;
    std::vector<ValuationCheck> checks;

    bool ok() const;
    std::string str() const;
};

ValuationReport verify_valuations(const Solution& s, const DecomposeOptions& opts = {});

struct IsogenyReport {
    std::vector<long> primes;
    long points_checked = 0;
    bool images_on_curve = true;
    bool kernel_ok = true;
    /// phi_sigma o sigma(phi_sigma) acts as [c] on sampled points; 0 if no
    /// consistent multiplier was seen.
    long cocycle = 0;

    bool ok() const { return images_on_curve && kernel_ok && !primes.empty(); }
};

/// Pointwise check of phi_sigma: conj(E) -> E at good split primes p <= p_max.
IsogenyReport isogeny_check(const Solution& s, long p_max = 31);

/// N_B = (2 q^2 Rad_2(y))^2 with Rad_2(y) the product of odd primes dividing y.
Int conductor_B(const Solution& s);

}  // namespace lnsieve
