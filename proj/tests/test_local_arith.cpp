#include <doctest.h>

#include <cmath>
#include <random>

#include "lnsieve/errors.hpp"
#include "lnsieve/frey.hpp"
#include "lnsieve/local_curve.hpp"
#include "lnsieve/quadfield.hpp"

using namespace lnsieve;

namespace {

// Split / non-split by the tangent slopes at the node: for
// y^2 = (x - x0)^2 (x - x1) the slopes are +-sqrt(x0 - x1) = +-sqrt(3 x0 + a2).
long node_trace_oracle(const LocalCurve& C) {
    const ResidueField& F = C.field;
    for (long i = 0; i < F.size(); ++i) {
        const ResidueElt x = F.element(i);
        const ResidueElt d = 3 * (x * x) + 2 * (C.a2 * x) + C.a4;
        if (C.rhs(x).is_zero() && d.is_zero()) {
            const ResidueElt slope2 = 3 * x + C.a2;
            REQUIRE_FALSE(slope2.is_zero());
            bool square = false;
            for (long j = 1; j < F.size(); ++j) square = square || F.element(j) * F.element(j) == slope2;
            return square ? F.size() + 1 : -(F.size() + 1);
        }
    }
    FAIL("no node found");
    return 0;
}

std::vector<ResidueField> small_fields() {
    std::vector<ResidueField> out;
    for (long p : {3L, 5L, 7L, 11L, 13L, 31L}) out.push_back(ResidueField::prime(p));
    out.push_back(ResidueField::quadratic(3, 2));
    out.push_back(ResidueField::quadratic(5, 2));
    out.push_back(ResidueField::quadratic(7, 3));
    out.push_back(ResidueField::quadratic(11, 2));
    return out;
}

}  // namespace

TEST_CASE("residue field arithmetic") {
    for (const ResidueField& F : small_fields()) {
        for (long i = 1; i < F.size(); ++i) {
            const ResidueElt x = F.element(i);
            CHECK(x * x.inverse() == F.one());
            CHECK(x.pow(F.size() - 1) == F.one());
            CHECK(x.pow(-2) * x.pow(2) == F.one());
        }
        // exactly half the nonzero elements are squares
        long squares = 0;
        for (long i = 1; i < F.size(); ++i) squares += is_square(F.element(i));
        CHECK(squares == (F.size() - 1) / 2);
        CHECK_THROWS_AS(F.zero().inverse(), DomainError);
        const auto table = F.quadratic_character_table();
        for (long i = 0; i < F.size(); ++i) CHECK(table[static_cast<size_t>(i)] == quadratic_character(F.element(i)));
    }
    CHECK_THROWS_AS(ResidueField::quadratic(7, 2), DomainError);  // 2 = 3^2 mod 7
}

TEST_CASE("invariants of a known curve") {
    // y^2 = x^3 + x: c4 = -48, c6 = 0, Delta = -64.
    const auto inv = weierstrass_invariants<long>(0, 1);
    CHECK(inv.c4 == -48);
    CHECK(inv.c6 == 0);
    CHECK(inv.delta == -64);
    // 1728 Delta = c4^3 - c6^2 over Z for random coefficients
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> d(-50, 50);
    for (int i = 0; i < 100; ++i) {
        const long a2 = d(rng), a4 = d(rng);
        const auto v = weierstrass_invariants<long>(a2, a4);
        CHECK(1728 * v.delta == v.c4 * v.c4 * v.c4 - v.c6 * v.c6);
    }
}

TEST_CASE("trace by character sum equals naive point count, Hasse bound") {
    std::mt19937_64 rng(5);
    for (const ResidueField& F : small_fields()) {
        std::uniform_int_distribution<long> pick(0, F.size() - 1);
        for (int i = 0; i < 40; ++i) {
            const LocalCurve C = LocalCurve::make(F.element(pick(rng)), F.element(pick(rng)));
            if (C.reduction_type() != ReductionType::good) continue;
            const long a = trace_of_frobenius(C);
            CHECK(a == F.size() + 1 - count_points_naive(C));
            CHECK(static_cast<double>(a * a) <= 4.0 * F.size());
        }
    }
}

TEST_CASE("reduction types and the multiplicative sign") {
    long mult_seen = 0, add_seen = 0;
    for (const ResidueField& F : small_fields())
        for (long i = 0; i < F.size(); ++i)
            for (long j = 0; j < F.size(); ++j) {
                const LocalCurve C = LocalCurve::make(F.element(i), F.element(j));
                switch (C.reduction_type()) {
                case ReductionType::good: break;
                case ReductionType::multiplicative:
                    ++mult_seen;
                    CHECK(reduction_trace(C) == node_trace_oracle(C));
                    CHECK_THROWS_AS(trace_of_frobenius(C), SingularCurve);
                    break;
                case ReductionType::additive:
                    ++add_seen;
                    CHECK(C.a2.is_zero());
                    CHECK(C.a4.is_zero());
                    CHECK_THROWS_AS(reduction_trace(C), SingularCurve);
                    break;
                }
            }
    CHECK(mult_seen > 0);
    CHECK(add_seen > 0);
}

TEST_CASE("a_7 of 82a1 and the curves F_q against naive counts") {
    CHECK(curve_F(41).label == "82a1");
    CHECK(rational_curve_ap(curve_F(41).curve, 7) == -4);
    CHECK(rational_curve_ap(curve_F(41).curve, 3) == -2);
    for (long q : {17L, 41L, 89L, 97L}) {
        const RationalCurve E = curve_F(q).curve;
        // conductor 2q: the discriminant is supported on {2, q}
        Int d = abs(E.discriminant());
        for (long l : {2L, q})
            while (mpz_divisible_ui_p(d.get_mpz_t(), static_cast<unsigned long>(l))) d /= l;
        CHECK(d == 1);
        for (long p = 3; p <= 31; p += 2) {
            if (!is_prime(p) || p == q) continue;
            const long ap = rational_curve_ap(E, p);
            CHECK(ap == p + 1 - count_points_naive(E, p));
            CHECK(ap * ap <= 4 * p);
        }
    }
}

TEST_CASE("Frey curve G of an identity matches the curve F_q") {
    // G_{x,0,q} for the four identities is isomorphic to F_q over Q.
    for (const Solution& s : known_obstructing_solutions()) {
        const RationalCurve F = curve_F(s.q).curve;
        for (long p = 3; p <= 31; p += 2) {
            if (!is_prime(p) || p == s.q) continue;
            const long chi = mod_floor(s.x, p);
            CHECK(reduction_trace(rational_frey_local(chi, s.k, s.q, p)) == rational_curve_ap(F, p));
        }
    }
}
