#include "lnsieve/frey.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lnsieve/errors.hpp"

namespace lnsieve {

const char* to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

namespace {

Int ipow(long b, unsigned long e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(b), e);
    return r;
}

Int int_pow(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

}  // namespace

Solution Solution::make(long q, const Int& x, long k, const Int& y, long n) {
    require_supported_q(q);
    if (k < 0) throw DomainError("k must be nonnegative");
    if (n < 3) throw DomainError("n must be at least 3");
    if (x * x - ipow(q, static_cast<unsigned long>(2 * k + 1)) != int_pow(y, static_cast<unsigned long>(n)))
        throw DomainError("not a solution: " + x.get_str() + "^2 - " + std::to_string(q) + "^" +
                          std::to_string(2 * k + 1) + " != " + y.get_str() + "^" + std::to_string(n));
    if (!mpz_even_p(y.get_mpz_t())) throw DomainError("y must be even");
    Int g;
    mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    if (g != 1) throw DomainError("gcd(x, y) != 1");
    if (mpz_divisible_ui_p(x.get_mpz_t(), static_cast<unsigned long>(q))) throw DomainError("q divides x");
    Solution s{q, x, k, y, n};
    if (mod_floor(x, 4) == 3) s.x = -x;
    return s;
}

std::string Solution::str() const {
    return "(q,x,k,y,n)=(" + std::to_string(q) + "," + x.get_str() + "," + std::to_string(k) + "," +
           y.get_str() + "," + std::to_string(n) + ")";
}

std::vector<Solution> known_obstructing_solutions() {
    return {Solution::make(17, -23, 0, 2, 9), Solution::make(41, 13, 0, 2, 7),
            Solution::make(89, -91, 0, 2, 13), Solution::make(97, -15, 0, 2, 7)};
}

const std::vector<SolutionTuple>& listed_tuples() {
    static const std::vector<SolutionTuple> tuples = {
        {41, 3, -2, 0, 5}, {41, 7, 2, 0, 3},  {41, 13, 2, 0, 7},
        {41, 411, 10, 1, 5}, {97, 15, 2, 0, 7}, {97, 77, 18, 0, 3},
    };
    return tuples;
}

// --- G -------------------------------------------------------------------------

RationalCurve rational_frey_global(const Solution& s) {
    const Int a4 = 4 * (s.x * s.x - ipow(s.q, static_cast<unsigned long>(2 * s.k + 1)));
    const Int a2 = 4 * s.x;
    if (!a4.fits_slong_p() || !a2.fits_slong_p()) throw DomainError("G coefficients exceed 64 bits");
    return RationalCurve{{0, a2.get_si(), 0, a4.get_si(), 0}};
}

LocalCurve rational_frey_local(long chi, long kappa, long q, long p) {
    if (p == 2 || p == q) throw DomainError("rational_frey_local: p must not divide 2q");
    const ResidueField F = ResidueField::prime(p);
    const ResidueElt x = F.from_int(chi);
    const ResidueElt qpow = F.from_int(mod_pow(q, 2 * kappa + 1, p));
    return LocalCurve::make(4 * x, 4 * (x * x - qpow));
}

CurveF curve_F(long q) {
    switch (q) {
    case 17: return {17, "34a1", RationalCurve{{1, 0, 0, -3, 1}}};
    case 41: return {41, "82a1", RationalCurve{{1, 0, 1, -2, 0}}};
    case 89: return {89, "178b1", RationalCurve{{1, 1, 0, -44, 80}}};
    case 97: return {97, "194a1", RationalCurve{{1, -1, 1, -3, -1}}};
    default: throw UnsupportedField(q);
    }
}

// --- E -------------------------------------------------------------------------

QuadInt w_global(const Solution& s) {
    const QuadInt base(s.q, s.x, ipow(s.q, static_cast<unsigned long>(s.k)));
    const QuadInt root = QuadInt::sqrt_q(s.q);
    return s.parity() == Parity::even ? base * root.pow(3) : base * root;
}

ResidueElt w_value(long chi, long mu, Parity parity, const PrimeIdealM& P) {
    if (P.p == 2 || P.p == P.q) throw DomainError("w_value: P must not divide 2q");
    const ResidueField F = P.residue_field();
    const ResidueElt s = sqrt_q_image(P);
    const long e = parity == Parity::even ? 2 * mu : 2 * mu + 1;
    const ResidueElt base = (F.from_int(chi) + F.from_int(mod_pow(P.q, e, P.p)) * s) * F.from_int(2).inverse();
    return parity == Parity::even ? base * s.pow(3) : base * s;
}

LocalCurve qcurve_local(long chi, long mu, Parity parity, const PrimeIdealM& P) {
    if (P.p == 2 || P.p == P.q) throw DomainError("qcurve_local: P must not divide 2q");
    const ResidueField F = P.residue_field();
    const ResidueElt gamma = reduce_mod(constants(P.q).gamma, P);
    const ResidueElt a2 = 2 * gamma * F.from_int(mod_pow(P.q, mu + 1, P.p));
    const ResidueElt a4 = gamma * gamma * w_value(chi, mu, parity, P);
    return LocalCurve::make(a2, a4);
}

QCurveModel QCurveModel::conj() const {
    const QuadInt c2 = a2.conj();
    const QuadInt c4 = a4.conj();
    return QCurveModel{q, m, w.conj(), c2, c4, weierstrass_invariants(c2, c4)};
}

QCurveModel qcurve_global(const Solution& s) {
    const FieldConstants c = constants(s.q);
    const QuadInt w = w_global(s);
    const QuadInt a2 = 2 * c.gamma * QuadInt::from_int(s.q, ipow(s.q, static_cast<unsigned long>(s.m() + 1)));
    const QuadInt a4 = c.gamma * c.gamma * w;
    return QCurveModel{s.q, s.m(), w, a2, a4, weierstrass_invariants(a2, a4)};
}

LocalCurve reduce_curve(const QCurveModel& E, const PrimeIdealM& P) {
    return LocalCurve::make(reduce_mod(E.a2, P), reduce_mod(E.a4, P));
}

// --- decomposition -------------------------------------------------------------

namespace {

// Real n-th root keeping the sign for odd n.
long double real_root(long double v, long n) {
    if (v < 0) return -std::pow(-v, 1.0L / static_cast<long double>(n));
    return std::pow(v, 1.0L / static_cast<long double>(n));
}

std::optional<QuadInt> nth_root(const QuadInt& t, long n, const Int& box) {
    const long double e1 = t.embed(1);
    const long double e2 = t.embed(-1);
    if (n % 2 == 0 && (e1 < 0 || e2 < 0)) return std::nullopt;
    const long double sq = std::sqrt(static_cast<long double>(t.q()));
    std::optional<QuadInt> best;
    // For even n both signs of each real root are candidates.
    const int signs = n % 2 == 0 ? 2 : 1;
    for (int s1 = 0; s1 < signs; ++s1) {
        for (int s2 = 0; s2 < signs; ++s2) {
            const long double r1 = real_root(e1, n) * (s1 ? -1 : 1);
            const long double r2 = real_root(e2, n) * (s2 ? -1 : 1);
            const long double fu = std::round(r1 + r2);
            const long double fv = std::round((r1 - r2) / sq);
            if (std::fabs(fu) > 9e18L || std::fabs(fv) > 9e18L) continue;
            const Int u = static_cast<long>(fu);
            const Int v = static_cast<long>(fv);
            if (abs(u) > box || abs(v) > box) continue;
            if (!mpz_even_p(Int(u - v).get_mpz_t())) continue;
            const QuadInt a(t.q(), u, v);
            if (a.pow(static_cast<unsigned long>(n)) != t) continue;
            if (!best || std::make_pair(a.u(), a.v()) < std::make_pair(best->u(), best->v())) best = a;
        }
    }
    return best;
}

}  // namespace

Decomposition decompose_solution(const Solution& s, const DecomposeOptions& opts) {
    const FieldConstants c = constants(s.q);
    const QuadInt lhs(s.q, s.x, ipow(s.q, static_cast<unsigned long>(s.k)));
    const auto beta = lhs.divide_exact(c.gamma.pow(static_cast<unsigned long>(s.n - 2)));
    if (!beta)
        throw DomainError("gamma^(n-2) does not divide (x + q^k sqrt q)/2 for " + s.str() +
                          " (is x normalized to 1 mod 4?)");
    for (long mag = 0; mag <= opts.r_max; ++mag) {
        std::optional<Decomposition> found;
        for (long r : {mag, -mag}) {
            if (mag == 0 && r < 0) break;
            const QuadInt t = *beta * c.delta.unit_pow(-r);
            if (auto a = nth_root(t, s.n, opts.box)) {
                if (!found || std::make_pair(a->u(), a->v()) < std::make_pair(found->alpha.u(), found->alpha.v()))
                    found = Decomposition{r, *a};
            }
        }
        if (found) return *found;
    }
    throw SearchExhausted("no decomposition with |r| <= " + std::to_string(opts.r_max) + " for " + s.str());
}

bool check_difference_identity(const Solution& s, const Decomposition& d) {
    const FieldConstants c = constants(s.q);
    const QuadInt term =
        c.delta.unit_pow(d.r) * c.gamma.pow(static_cast<unsigned long>(s.n - 2)) * d.alpha.pow(static_cast<unsigned long>(s.n));
    const QuadInt lhs = QuadInt::from_int(s.q, ipow(s.q, static_cast<unsigned long>(s.k))) * QuadInt::sqrt_q(s.q);
    return term - term.conj() == lhs;
}

// --- valuations ----------------------------------------------------------------

bool ValuationReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const ValuationCheck& c) { return c.ok; });
}

std::string ValuationReport::str() const {
    std::ostringstream os;
    os << solution.str() << " r=" << decomposition.r << " alpha=" << decomposition.alpha.str() << "\n";
    for (const auto& c : checks)
        os << "  " << (c.ok ? "ok   " : "FAIL ") << c.name << " = " << c.actual << " (expected " << c.expected
           << ")\n";
    return os.str();
}

namespace {

// Odd rational primes dividing n, n != 0.
std::vector<long> odd_prime_factors(Int n) {
    std::vector<long> out;
    n = abs(n);
    while (mpz_even_p(n.get_mpz_t()) && n != 0) n /= 2;
    for (long d = 3; n > 1; d += 2) {
        if (Int(d) * d > n) {
            if (!n.fits_slong_p()) throw DomainError("norm too large to factor by trial division");
            out.push_back(n.get_si());
            break;
        }
        if (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(d))) {
            out.push_back(d);
            while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(d))) n /= d;
        }
    }
    return out;
}

}  // namespace

ValuationReport verify_valuations(const Solution& s, const DecomposeOptions& opts) {
    ValuationReport rep{s, decompose_solution(s, opts), {}};
    const FieldConstants c = constants(s.q);
    const QCurveModel E = qcurve_global(s);
    const PrimeIdealM G = PrimeIdealM::generated_by(c.gamma);
    const PrimeIdealM Gb = PrimeIdealM::generated_by(c.gamma_bar);
    const PrimeIdealM R = PrimeIdealM::generated_by(QuadInt::sqrt_q(s.q));
    const QuadInt& alpha = rep.decomposition.alpha;

    auto add = [&](std::string name, long expected, long actual) {
        rep.checks.push_back({std::move(name), std::to_string(expected), actual, expected == actual});
    };
    const long oa_g = val_at(alpha, G);
    const long oa_gb = val_at(alpha, Gb);
    add("ord_gamma(w)", s.n - 2 + s.n * oa_g, val_at(E.w, G));
    add("ord_gamma_bar(w)", 0, val_at(E.w, Gb));
    add("ord_gamma(c4)", 8, val_at(E.inv.c4, G));
    add("ord_gamma(c6)", 12, val_at(E.inv.c6, G));
    add("ord_gamma_bar(c4)", 4, val_at(E.inv.c4, Gb));
    add("ord_gamma_bar(c6)", 6, val_at(E.inv.c6, Gb));
    add("ord_gamma(Delta)", 8 + 2 * s.n * (1 + oa_g), val_at(E.inv.delta, G));
    add("ord_gamma_bar(Delta)", 4 + s.n * (1 + oa_gb), val_at(E.inv.delta, Gb));
    add("ord_sqrtq(w)", s.parity() == Parity::even ? 3 : 1, val_at(E.w, R));
    add("ord_sqrtq(Delta)", s.parity() == Parity::even ? 9 : 3, val_at(E.inv.delta, R));
    {
        const long v = val_at(E.inv.c4, R);
        rep.checks.push_back({"ord_sqrtq(c4)", ">= 1", v, v >= 1});
    }
    // Multiplicative primes away from 2q: primes dividing alpha * conj(alpha).
    for (long ell : odd_prime_factors(alpha.norm())) {
        if (ell == s.q) continue;
        std::vector<PrimeIdealM> ideals;
        if (splitting(ell, s.q) == SplitKind::split)
            ideals = {PrimeIdealM::above(ell, s.q), PrimeIdealM::above(ell, s.q, true)};
        else
            ideals = {PrimeIdealM::above(ell, s.q)};
        for (const auto& P : ideals) {
            if (val_at(alpha, P) == 0 && val_at(alpha.conj(), P) == 0) continue;
            const long v = val_at(E.inv.delta, P);
            rep.checks.push_back({"n | ord_" + P.str() + "(Delta)", "0 mod n", v, v % s.n == 0});
            const long vc4 = val_at(E.inv.c4, P);
            rep.checks.push_back({"ord_" + P.str() + "(c4)", "0", vc4, vc4 == 0});
        }
    }
    return rep;
}

// --- isogeny -------------------------------------------------------------------

namespace {

struct Pt {
    bool inf = false;
    ResidueElt x, y;
};

bool same(const Pt& a, const Pt& b) {
    if (a.inf || b.inf) return a.inf == b.inf;
    return a.x == b.x && a.y == b.y;
}

Pt neg(const Pt& P) { return P.inf ? P : Pt{false, P.x, -P.y}; }

Pt dbl(const LocalCurve& C, const Pt& P) {
    if (P.inf || P.y.is_zero()) return Pt{true, {}, {}};
    const ResidueElt lam = (3 * (P.x * P.x) + 2 * (C.a2 * P.x) + C.a4) * (2 * P.y).inverse();
    const ResidueElt x3 = lam * lam - C.a2 - 2 * P.x;
    return Pt{false, x3, lam * (P.x - x3) - P.y};
}

// The 2-isogeny (X,Y) -> ((X^2 + b X + c)/(g^2 X), (X^2 - c) Y/(g^3 X^2)) with
// b = 2 g q^(m+1), c = g^2 w for the source curve (g, w).
Pt apply(const ResidueElt& b, const ResidueElt& c, const ResidueElt& g, const Pt& P) {
    if (P.inf || P.x.is_zero()) return Pt{true, {}, {}};
    const ResidueElt X = P.x;
    const ResidueElt x = (X * X + b * X + c) * (g * g * X).inverse();
    const ResidueElt y = (X * X - c) * P.y * (g * g * g * X * X).inverse();
    return Pt{false, x, y};
}

}  // namespace

IsogenyReport isogeny_check(const Solution& s, long p_max) {
    IsogenyReport rep;
    const FieldConstants c = constants(s.q);
    const QCurveModel E = qcurve_global(s);
    const QCurveModel Eb = E.conj();
    bool saw_plus = false, saw_minus = false;
    for (long p = 3; p <= p_max; p += 2) {
        if (!is_prime(p) || p == s.q || splitting(p, s.q) != SplitKind::split) continue;
        const PrimeIdealM P = PrimeIdealM::above(p, s.q);
        const LocalCurve Ep = reduce_curve(E, P);
        const LocalCurve Ebp = reduce_curve(Eb, P);
        if (Ep.delta.is_zero() || Ebp.delta.is_zero()) continue;
        rep.primes.push_back(p);
        const ResidueField F = Ep.field;
        // phi_sigma: conj(E) -> E uses gamma-bar and w-bar; its conjugate
        // E -> conj(E) uses gamma and w.
        const ResidueElt gb = reduce_mod(c.gamma_bar, P);
        const ResidueElt g = reduce_mod(c.gamma, P);
        const ResidueElt phi_c = reduce_mod(c.gamma_bar * c.gamma_bar * E.w.conj(), P);
        const ResidueElt psi_c = reduce_mod(c.gamma * c.gamma * E.w, P);

        // Kernel: (0,0) -> infinity, other 2-torsion -> (0,0).
        if (!apply(Ebp.a2, phi_c, gb, Pt{false, F.zero(), F.zero()}).inf) rep.kernel_ok = false;
        for (long i = 1; i < F.size(); ++i) {
            const ResidueElt X = F.element(i);
            if (!Ebp.rhs(X).is_zero()) continue;
            const Pt img = apply(Ebp.a2, phi_c, gb, Pt{false, X, F.zero()});
            if (img.inf || !img.x.is_zero() || !img.y.is_zero()) rep.kernel_ok = false;
        }

        for (long i = 1; i < F.size(); ++i) {
            const ResidueElt X = F.element(i);
            const ResidueElt r = Ebp.rhs(X);
            for (long j = 0; j < F.size(); ++j) {
                const ResidueElt Y = F.element(j);
                if (!(Y * Y == r)) continue;
                ++rep.points_checked;
                const Pt img = apply(Ebp.a2, phi_c, gb, Pt{false, X, Y});
                if (!img.inf && !Ep.contains(img.x, img.y)) rep.images_on_curve = false;
            }
        }
        // Cocycle: phi_sigma(sigma(phi_sigma)(P)) against [2]P and [-2]P on E.
        for (long i = 1; i < F.size(); ++i) {
            const ResidueElt X = F.element(i);
            const ResidueElt r = Ep.rhs(X);
            for (long j = 1; j < F.size(); ++j) {
                const ResidueElt Y = F.element(j);
                if (!(Y * Y == r)) continue;
                const Pt Pp{false, X, Y};
                const Pt mid = apply(Ep.a2, psi_c, g, Pp);
                const Pt img = apply(Ebp.a2, phi_c, gb, mid);
                const Pt two = dbl(Ep, Pp);
                if (same(img, two) && !same(two, neg(two))) saw_plus = true;
                if (same(img, neg(two)) && !same(two, neg(two))) saw_minus = true;
            }
        }
    }
    if (saw_plus != saw_minus) rep.cocycle = saw_minus ? -2 : 2;
    return rep;
}

Int conductor_B(const Solution& s) {
    Int rad = 1;
    for (long ell : odd_prime_factors(s.y)) rad *= ell;
    Int base = 2 * Int(s.q) * s.q * rad;
    return base * base;
}

}  // namespace lnsieve
