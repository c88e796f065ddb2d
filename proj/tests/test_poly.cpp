#include <doctest.h>

#include <random>

#include "lnsieve/errors.hpp"
#include "lnsieve/poly.hpp"

using namespace lnsieve;

namespace {

IntPoly from_roots(const std::vector<long>& roots) {
    IntPoly p{1};
    for (long r : roots) p = p * IntPoly{-r, 1};
    return p;
}

IntPoly random_monic(std::mt19937_64& rng, long deg, long bound) {
    std::uniform_int_distribution<long> d(-bound, bound);
    std::vector<mpz_class> c;
    for (long i = 0; i < deg; ++i) c.emplace_back(d(rng));
    c.emplace_back(1);
    return IntPoly(std::move(c));
}

}  // namespace

TEST_CASE("basic operations") {
    const IntPoly p{1, 2, 3};
    CHECK(p.degree() == 2);
    CHECK(p.eval(2) == 17);
    CHECK((p - p).is_zero());
    CHECK(IntPoly().degree() == -1);
    CHECK(p.shift(1) == IntPoly{6, 8, 3});
    CHECK(from_roots({1, 2}) == IntPoly{2, -3, 1});
    CHECK(IntPoly{-4, 0, 1}.str() == "x^2 - 4");
}

TEST_CASE("resultant equals the product formula over integer roots") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> d(-6, 6);
    for (int i = 0; i < 60; ++i) {
        std::vector<long> roots(static_cast<size_t>(1 + i % 5));
        for (auto& r : roots) r = d(rng);
        const IntPoly A = from_roots(roots);
        const IntPoly B = random_monic(rng, 1 + i % 4, 9) * IntPoly{d(rng) == 0 ? 1 : 2};
        mpz_class expect = 1;
        for (long r : roots) expect *= B.eval(r);
        CHECK(resultant(A, B) == expect);
    }
    CHECK(resultant(IntPoly{-1, 1}, IntPoly{-1, 1}) == 0);
}

TEST_CASE("inert t-charpoly: worked examples") {
    CHECK(inert_t_charpoly(IntPoly{18, 0, 1}, 7) == from_roots({-4, -4}));
    CHECK(inert_t_charpoly(IntPoly{0, 0, 1}, 7) == from_roots({14, 14}));
    CHECK_THROWS_AS(inert_t_charpoly(IntPoly{1, 2}, 7), DomainError);
}

TEST_CASE("inert t-charpoly agrees with the Sylvester resultant pointwise") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 80; ++i) {
        const long deg = 1 + i % 8;
        const long p = (i % 2) ? 7 : 13;
        const IntPoly C = random_monic(rng, deg, 20);
        const IntPoly D = inert_t_charpoly(C, p);
        CHECK(D.degree() == deg);
        CHECK(D.is_monic());
        for (long x0 : {-30L, -4L, 0L, 6L, 14L, 41L}) {
            // Res_y(C(y), (x0 - 2p) - y^2)
            const IntPoly B{x0 - 2 * p, 0, -1};
            CHECK(D.eval(x0) == resultant(C, B));
        }
    }
}

TEST_CASE("inert t-charpoly roots are squares plus 2p") {
    // C with integer roots r_i gives D with roots r_i^2 + 2p.
    for (const auto& roots : std::vector<std::vector<long>>{{1, -2, 3}, {0, 5}, {4, 4, -1, 2}}) {
        std::vector<long> t;
        for (long r : roots) t.push_back(r * r + 2 * 11);
        CHECK(inert_t_charpoly(from_roots(roots), 11) == from_roots(t));
    }
}
