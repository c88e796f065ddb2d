#include <doctest.h>

#include <random>

#include "lnsieve/errors.hpp"
#include "lnsieve/quadfield.hpp"

using namespace lnsieve;

namespace {

const long kQs[] = {17, 41, 89, 97};

QuadInt random_elt(long q, std::mt19937_64& rng, long bound = 200) {
    std::uniform_int_distribution<long> d(-bound, bound);
    long u = d(rng), v = d(rng);
    if ((u - v) % 2 != 0) ++u;
    return QuadInt(q, u, v);
}

}  // namespace

TEST_CASE("fundamental unit equals the brute-force smallest unit") {
    for (long q : kQs) {
        // Smallest v >= 1 with q v^2 +- 4 a square gives the smallest unit > 1.
        long found_u = 0, found_v = 0, found_norm = 0;
        for (long v = 1; v < 5000 && !found_v; ++v)
            for (int s : {-4, 4}) {
                const Int t = Int(q) * v * v + s;
                if (t > 0 && mpz_perfect_square_p(t.get_mpz_t())) {
                    Int u;
                    mpz_sqrt(u.get_mpz_t(), t.get_mpz_t());
                    found_u = u.get_si();
                    found_v = v;
                    found_norm = s / 4;  // u^2 - q v^2 = s
                    break;
                }
            }
        const QuadInt eps = fundamental_unit(q);
        CHECK(eps.u() == found_u);
        CHECK(eps.v() == found_v);
        CHECK(eps.norm() == found_norm);
        CHECK(eps.norm() == -1);
    }
}

TEST_CASE("gamma constants") {
    for (long q : kQs) {
        const FieldConstants c = constants(q);
        CHECK(c.gamma.norm() == -2);
        CHECK(c.gamma_bar == c.gamma.conj());
        const QuadInt g2 = c.gamma * c.gamma;
        CHECK(congruent_mod(c.gamma_bar, QuadInt::from_int(q, -1), g2));
        CHECK(congruent_mod(QuadInt::sqrt_q(q), QuadInt::from_int(q, -1), g2));
        CHECK(c.gamma * c.gamma_bar == QuadInt::from_int(q, -2));
    }
}

TEST_CASE("parity and field checks") {
    CHECK_THROWS_AS(QuadInt(17, 1, 2), DomainError);
    CHECK_THROWS_AS(QuadInt(13, 2, 0), UnsupportedField);
    CHECK_THROWS_AS(QuadInt(17, 1, 1) + QuadInt(41, 1, 1), DomainError);
    CHECK_NOTHROW(QuadInt(17, 3, 1));
}

TEST_CASE("ring axioms and norm multiplicativity") {
    std::mt19937_64 rng(7);
    for (long q : kQs)
        for (int i = 0; i < 200; ++i) {
            const QuadInt a = random_elt(q, rng), b = random_elt(q, rng), c = random_elt(q, rng);
            CHECK(a * (b + c) == a * b + a * c);
            CHECK((a * b).norm() == a.norm() * b.norm());
            CHECK((a * b).conj() == a.conj() * b.conj());
            CHECK(a * a.conj() == QuadInt::from_int(q, a.norm()));
            if (!b.is_zero()) {
                const auto back = (a * b).divide_exact(b);
                REQUIRE(back.has_value());
                CHECK(*back == a);
            }
        }
}

TEST_CASE("unit powers") {
    for (long q : kQs) {
        const QuadInt e = fundamental_unit(q);
        CHECK(e.unit_pow(3) * e.unit_pow(-3) == QuadInt::from_int(q, 1));
        CHECK(e.unit_pow(4) == e.pow(4));
        CHECK(e.unit_pow(-1).norm() == -1);
    }
}

TEST_CASE("splitting agrees with enumeration of squares") {
    for (long q : kQs)
        for (long p = 2; p < 200; ++p) {
            if (!is_prime(p)) continue;
            SplitKind expect;
            if (p == q) {
                expect = SplitKind::ramified;
            } else if (p == 2) {
                expect = SplitKind::split;  // q = 1 (mod 8)
            } else {
                bool sq = false;
                for (long r = 1; r < p; ++r) sq = sq || (r * r - q) % p == 0;
                expect = sq ? SplitKind::split : SplitKind::inert;
            }
            CHECK(splitting(p, q) == expect);
        }
}

TEST_CASE("valuations sum to the valuation of the norm") {
    std::mt19937_64 rng(11);
    for (long q : kQs)
        for (long p : {2L, 3L, 5L, 7L, 11L, 13L, q}) {
            const PrimeIdealM P = PrimeIdealM::above(p, q);
            for (int i = 0; i < 100; ++i) {
                const QuadInt a = random_elt(q, rng, 5000);
                if (a.is_zero()) continue;
                const long vn = int_val(a.norm(), p);
                long total;
                if (P.kind == SplitKind::split) {
                    total = val_at(a, P) + val_at(a, PrimeIdealM::above(p, q, true));
                } else if (P.kind == SplitKind::inert) {
                    total = 2 * val_at(a, P);
                } else {
                    total = val_at(a, P);
                }
                CHECK(total == vn);
                const QuadInt b = random_elt(q, rng, 100);
                if (!b.is_zero()) CHECK(val_at(a * b, P) == val_at(a, P) + val_at(b, P));
            }
        }
    CHECK_THROWS_AS(val_at(QuadInt::from_int(17, 0), PrimeIdealM::above(3, 17)), InfiniteValuation);
}

TEST_CASE("reduction mod P is a ring homomorphism") {
    std::mt19937_64 rng(13);
    for (long q : kQs)
        for (long p : {2L, 3L, 5L, 7L, 13L, 19L, 23L, q}) {
            const PrimeIdealM P = PrimeIdealM::above(p, q);
            for (int i = 0; i < 100; ++i) {
                const QuadInt a = random_elt(q, rng, 10000), b = random_elt(q, rng, 10000);
                CHECK(reduce_mod(a * b, P) == reduce_mod(a, P) * reduce_mod(b, P));
                CHECK(reduce_mod(a + b, P) == reduce_mod(a, P) + reduce_mod(b, P));
            }
            const ResidueElt s = sqrt_q_image(P);
            CHECK(s * s == P.residue_field().from_int(q));
        }
}

TEST_CASE("conjugate split primes") {
    const PrimeIdealM P = PrimeIdealM::above(13, 17), Q = PrimeIdealM::above(13, 17, true);
    CHECK(P.root + Q.root == 13);
    CHECK((P.root * P.root - 17) % 13 == 0);
    // r - sqrt(q) lies in P, its conjugate in the other prime.
    const QuadInt a(17, 2 * P.root, -2);
    CHECK(val_at(a, P) >= 1);
    CHECK(val_at(a, Q) == 0);
    CHECK(val_at(a, P) == val_at(a.conj(), Q));
}

TEST_CASE("small integer helpers") {
    CHECK(multiplicative_order(41, 7) == 2);
    CHECK(multiplicative_order(17, 3) == 2);
    CHECK(mod_pow(3, 4, 7) == 4);
    CHECK(mod_floor(Int(-3), 7) == 4);
    CHECK(int_val(Int(96), 2) == 5);
    CHECK(is_prime(97));
    CHECK_FALSE(is_prime(91));
}
