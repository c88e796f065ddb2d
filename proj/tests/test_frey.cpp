#include <doctest.h>

#include "lnsieve/errors.hpp"
#include "lnsieve/frey.hpp"

using namespace lnsieve;

namespace {

std::vector<Solution> all_solutions() {
    std::vector<Solution> out = known_obstructing_solutions();
    out.push_back(Solution::make(17, -71, 1, 2, 7));
    for (const auto& t : listed_tuples())
        if (t.y % 2 == 0) out.push_back(Solution::make(t.q, t.x, t.k, t.y, t.n));
    return out;
}

Int power(long b, unsigned long e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(b), e);
    return r;
}

}  // namespace

TEST_CASE("solution validation and normalization") {
    CHECK(Solution::make(17, 23, 0, 2, 9).x == -23);
    CHECK(Solution::make(41, 13, 0, 2, 7).x == 13);
    CHECK(Solution::make(97, 15, 0, 2, 7).x == -15);
    CHECK_THROWS_AS(Solution::make(17, 25, 0, 2, 9), DomainError);   // not a solution
    CHECK_THROWS_AS(Solution::make(41, 7, 0, 2, 2), DomainError);    // n < 3
    CHECK_THROWS_AS(Solution::make(41, 9, 0, 2, 3), DomainError);    // 81 - 41 = 40, not a cube
    CHECK_THROWS_AS(Solution::make(97, 77, -1, 18, 3), DomainError);
    const Solution s = Solution::make(41, 411, 1, 10, 5);
    CHECK(s.parity() == Parity::odd);
    CHECK(s.m() == 0);
}

TEST_CASE("w + conj(w) = q^(2m+2)") {
    for (const Solution& s : all_solutions()) {
        const QuadInt w = w_global(s);
        CHECK((w + w.conj()) == QuadInt::from_int(s.q, power(s.q, static_cast<unsigned long>(2 * s.m() + 2))));
        // N(w) = N(sqrt q)^a * y^n / 4 with a = 3 (k even) or 1 (k odd)
        const Int nw = w.norm();
        const Int yn = [&] {
            Int r;
            mpz_pow_ui(r.get_mpz_t(), s.y.get_mpz_t(), static_cast<unsigned long>(s.n));
            return r;
        }();
        const unsigned long a = s.parity() == Parity::even ? 3 : 1;
        CHECK(nw == -yn * power(s.q, a) / 4);
    }
}

TEST_CASE("reduce-then-build equals build-then-reduce") {
    for (const Solution& s : all_solutions()) {
        const QCurveModel E = qcurve_global(s);
        for (long p = 3; p <= 31; p += 2) {
            if (!is_prime(p) || p == s.q) continue;
            for (bool conj : {false, true}) {
                if (conj && splitting(p, s.q) != SplitKind::split) continue;
                const PrimeIdealM P = PrimeIdealM::above(p, s.q, conj);
                const long ord = multiplicative_order(s.q, p);
                const LocalCurve a = qcurve_local(mod_floor(s.x, p), s.m() % ord, s.parity(), P);
                const LocalCurve b = reduce_curve(E, P);
                CHECK(a.a2 == b.a2);
                CHECK(a.a4 == b.a4);
            }
            const RationalCurve G = rational_frey_global(s);
            const LocalCurve g = rational_frey_local(mod_floor(s.x, p), s.k, s.q, p);
            if (g.reduction_type() == ReductionType::good) CHECK(trace_of_frobenius(g) == rational_curve_ap(G, p));
        }
    }
}

TEST_CASE("decomposition and the difference identity") {
    for (const Solution& s : known_obstructing_solutions()) {
        const Decomposition d = decompose_solution(s);
        CHECK(check_difference_identity(s, d));
        const FieldConstants c = constants(s.q);
        // (x + q^k sqrt q)/2 = delta^r gamma^(n-2) alpha^n
        const QuadInt lhs(s.q, s.x, power(s.q, static_cast<unsigned long>(s.k)));
        CHECK(lhs == c.delta.unit_pow(d.r) * c.gamma.pow(static_cast<unsigned long>(s.n - 2)) *
                         d.alpha.pow(static_cast<unsigned long>(s.n)));
    }
    DecomposeOptions tiny;
    tiny.r_max = 0;
    tiny.box = 0;
    CHECK_THROWS_AS(decompose_solution(Solution::make(89, 91, 0, 2, 13), tiny), SearchExhausted);
}

TEST_CASE("valuations at gamma, gamma-bar and sqrt q") {
    for (const Solution& s : known_obstructing_solutions()) {
        const ValuationReport r = verify_valuations(s);
        INFO(r.str());
        CHECK(r.ok());
        const FieldConstants c = constants(s.q);
        const QCurveModel E = qcurve_global(s);
        const PrimeIdealM G = PrimeIdealM::generated_by(c.gamma), Gb = PrimeIdealM::generated_by(c.gamma_bar);
        CHECK(val_at(E.inv.c4, G) == 8);
        CHECK(val_at(E.inv.c6, G) == 12);
        CHECK(val_at(E.inv.c4, Gb) == 4);
        CHECK(val_at(E.inv.c6, Gb) == 6);
        const long vd = val_at(E.inv.delta, PrimeIdealM::generated_by(QuadInt::sqrt_q(s.q)));
        CHECK((vd == 3 || vd == 9));
    }
}

TEST_CASE("the isogeny conj(E) -> E") {
    for (const Solution& s : known_obstructing_solutions()) {
        const IsogenyReport r = isogeny_check(s, 31);
        CHECK(r.ok());
        CHECK(r.points_checked > 0);
        CHECK((r.cocycle == 2 || r.cocycle == -2));
    }
}

TEST_CASE("conductor of the restriction of scalars") {
    CHECK(conductor_B(Solution::make(41, 13, 0, 2, 7)) == Int(3362) * 3362);
    // y = 10 contributes Rad_2(10) = 5
    CHECK(conductor_B(Solution::make(41, 411, 1, 10, 5)) == Int(3362 * 5) * (3362 * 5));
}
