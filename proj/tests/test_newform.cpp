#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "lnsieve/errors.hpp"
#include "lnsieve/newform.hpp"
#include "lnsieve/quadfield.hpp"

using namespace lnsieve;
using nlohmann::json;

namespace {

const std::filesystem::path kData = LNSIEVE_TEST_DATA_DIR;

NewformSpace load(long q) { return read_snapshot(kData / ("newforms_q" + std::to_string(q) + ".json")).space; }

json minimal_doc() {
    return json::parse(R"({"q": 17, "level": 578, "weight": 2, "char_conductor": 17, "total_dim": 2,
        "classes": [{"label": "x", "dim": 2, "ap": {"3": {"charpoly": [18, 0, 1]}}}]})");
}

}  // namespace

TEST_CASE("epsilon is the Legendre symbol") {
    CHECK(epsilon(7, 41) == -1);
    CHECK(epsilon(2, 41) == 1);
    CHECK_THROWS_AS(epsilon(41, 41), DomainError);
    for (long q : {17L, 41L, 89L, 97L})
        for (long p = 2; p <= 31; ++p) {
            if (!is_prime(p) || p == q) continue;
            bool p_square_mod_q = false;
            for (long r = 1; r < q; ++r) p_square_mod_q = p_square_mod_q || (r * r - p) % q == 0;
            CHECK(epsilon(p, q) == (p_square_mod_q ? 1 : -1));
            if (p > 2) CHECK((epsilon(p, q) == -1) == (splitting(p, q) == SplitKind::inert));
        }
}

TEST_CASE("bundled spaces match the newform summaries") {
    for (long q : {17L, 41L}) {
        const LoadedSpace l = read_snapshot(kData / ("newforms_q" + std::to_string(q) + ".json"));
        CHECK(l.warnings.empty());
        CHECK(l.space.summary() == published_summary(q));
        CHECK(l.space.summary().consistent());
    }
    CHECK(published_summary(17).total_dim == 22);
    CHECK(published_summary(89).class_count == 26);
    CHECK(published_summary(97).total_dim == 774);
    for (long q : {17L, 41L, 89L, 97L}) CHECK(published_summary(q).consistent());
}

TEST_CASE("t-value charpolys") {
    NewformClass f;
    f.label = "t";
    f.dim = 2;
    f.ap[7].charpoly = IntPoly{18, 0, 1};
    f.ap[5].charpoly = IntPoly{-8, 0, 1};
    CHECK(t_value_charpoly(f, 7, 41) == IntPoly{16, 8, 1});    // (x + 4)^2
    CHECK(t_value_charpoly(f, 5, 41) == IntPoly{-8, 0, 1});    // 5 splits in Q(sqrt 41)
    CHECK_THROWS_AS(t_value_charpoly(f, 11, 41), DataUnavailable);
    f.ap[13].embeddings = {{0.5, 1}, {0.5, -1}};
    CHECK_THROWS_AS(t_value_charpoly(f, 13, 41), DataUnavailable);
}

TEST_CASE("exact product norms") {
    NewformClass f;
    f.label = "t";
    f.dim = 2;
    f.ap[7].charpoly = IntPoly{18, 0, 1};
    CHECK(product_norm(f, 7, 41, {}) == 1);
    CHECK(product_norm(f, 7, 41, {6}) == 100);
    CHECK(product_norm(f, 7, 41, {6, -4}) == 0);
}

TEST_CASE("numeric path agrees with the exact path where it certifies") {
    const NewformSpace sp = load(17);
    long certified = 0, refused = 0;
    for (const auto& f : sp.classes)
        for (const auto& [p, d] : f.ap) {
            if (p > 31 || !d.has_numeric()) continue;
            for (const std::set<long>& A : {std::set<long>{}, std::set<long>{4}, std::set<long>{-2, 4},
                                            std::set<long>{0, 2, 6}}) {
                try {
                    const mpz_class v = product_norm_numeric(f, p, 17, A);
                    CHECK(v == product_norm_exact(f, p, 17, A));
                    ++certified;
                } catch (const PrecisionError& e) {
                    CHECK(e.error_bound >= 0.5);
                    CHECK(e.required_digits > 0);
                    ++refused;
                }
            }
        }
    CHECK(certified > 50);
    MESSAGE("certified " << certified << ", refused " << refused);
}

TEST_CASE("numeric path refuses a loose error bound") {
    NewformClass f;
    f.label = "loose";
    f.dim = 2;
    f.ap[3].embeddings = {{0, std::sqrt(2.0)}, {0, -std::sqrt(2.0)}};
    f.ap[3].err = 0.3;
    CHECK_THROWS_AS(product_norm_numeric(f, 3, 17, {4, 5, 6}), PrecisionError);
    f.ap[3].err = 1e-12;
    // 3 is inert in Q(sqrt 17): t = a^2 + 6 = 4, so prod (5 - 4)(6 - 4) per embedding
    CHECK(product_norm_numeric(f, 3, 17, {5, 6}) == 4);
}

TEST_CASE("snapshot round trip") {
    const NewformSpace sp = load(17);
    const auto tmp = std::filesystem::temp_directory_path() / "lnsieve_rt_q17.json";
    write_snapshot(sp, tmp);
    const NewformSpace back = read_snapshot(tmp).space;
    CHECK(to_json(back) == to_json(sp));
    REQUIRE(back.classes.size() == sp.classes.size());
    for (size_t i = 0; i < sp.classes.size(); ++i) {
        CHECK(back.classes[i].label == sp.classes[i].label);
        CHECK(back.classes[i].ap.size() == sp.classes[i].ap.size());
    }
    std::filesystem::remove(tmp);
}

TEST_CASE("snapshot validation") {
    CHECK_NOTHROW(parse_snapshot(minimal_doc(), {SummaryCheck::ignore}));
    {
        const LoadedSpace l = parse_snapshot(minimal_doc());
        CHECK(l.warnings.size() == 1);  // 1 class of dim 2 is not the q = 17 summary
        CHECK_THROWS_AS(parse_snapshot(minimal_doc(), {SummaryCheck::error}), ValidationError);
    }
    json d = minimal_doc();
    d["total_dim"] = 3;
    CHECK_THROWS_AS(parse_snapshot(d), ValidationError);
    d = minimal_doc();
    d["level"] = 579;
    CHECK_THROWS_AS(parse_snapshot(d), ValidationError);
    d = minimal_doc();
    d["char_conductor"] = 1;
    CHECK_THROWS_AS(parse_snapshot(d), ValidationError);
    d = minimal_doc();
    d["classes"][0]["ap"]["3"]["charpoly"] = {18, 1};
    CHECK_THROWS_AS(parse_snapshot(d), ValidationError);  // wrong degree
    d = minimal_doc();
    d["classes"][0]["ap"]["3"]["charpoly"] = {18, 0, 2};
    CHECK_THROWS_AS(parse_snapshot(d), ValidationError);  // not monic
    d = minimal_doc();
    d["classes"][0]["ap"]["3"]["charpoly"] = {9007199254740993LL, 0, 1};
    CHECK_THROWS_AS(parse_snapshot(d), ValidationError);  // above 2^53 must be a string
    d["classes"][0]["ap"]["3"]["charpoly"] = {"9007199254740993", 0, 1};
    CHECK(parse_snapshot(d, {SummaryCheck::ignore}).space.classes[0].ap.at(3).charpoly->coeff(0) ==
          mpz_class("9007199254740993"));
    d = minimal_doc();
    d["classes"][0]["ap"]["3"]["embeddings"] = {{0.0, 4.2426406871192851}, {0.0, -4.2426406871192851}};
    CHECK_NOTHROW(parse_snapshot(d, {SummaryCheck::ignore}));
    d["classes"][0]["ap"]["3"]["embeddings"] = {{0.0, 4.3}, {0.0, -4.2426406871192851}};
    CHECK_THROWS_AS(parse_snapshot(d), ValidationError);  // not a root
    d = minimal_doc();
    d["classes"][0]["ap"]["4"] = d["classes"][0]["ap"]["3"];
    CHECK_THROWS_AS(parse_snapshot(d), ValidationError);  // 4 is not prime
    CHECK_THROWS_AS(read_snapshot("/nonexistent/snapshot.json"), DataUnavailable);
}

TEST_CASE("stored charpolys are monic of degree dim, embeddings are roots") {
    for (long q : {17L, 41L}) {
        const NewformSpace sp = load(q);
        for (const auto& f : sp.classes)
            for (const auto& [p, d] : f.ap) {
                REQUIRE(d.has_exact());
                CHECK(d.charpoly->degree() == f.dim);
                CHECK(d.charpoly->is_monic());
            }
    }
}

TEST_CASE("Ramanujan bound on stored embeddings") {
    for (long q : {17L, 41L}) CHECK(ramanujan_violations(load(q), 31).empty());
    NewformSpace bad = load(17);
    bad.classes[0].ap[3].embeddings[0] = {3.5, 0};
    CHECK(ramanujan_violations(bad, 31).size() == 1);
}

TEST_CASE("inert t-charpoly roots are squares plus 2p of the embeddings") {
    const NewformSpace sp = load(41);
    long checked = 0;
    for (const auto& f : sp.classes) {
        if (f.dim > 8) continue;
        for (const auto& [p, d] : f.ap) {
            if (splitting(p, 41) != SplitKind::inert || !d.has_numeric()) continue;
            const IntPoly T = t_value_charpoly(f, p, 41);
            for (const auto& a : d.embeddings) {
                const std::complex<long double> t = std::complex<long double>(a.real(), a.imag()) *
                                                        std::complex<long double>(a.real(), a.imag()) +
                                                    std::complex<long double>(2.0L * p, 0);
                std::complex<long double> v = 0;
                long double scale = 0;
                for (long i = T.degree(); i >= 0; --i) {
                    v = v * t + static_cast<long double>(T.coeff(static_cast<size_t>(i)).get_d());
                    scale = scale * std::abs(t) + std::fabs(T.coeff(static_cast<size_t>(i)).get_d());
                }
                CHECK(std::abs(v) / scale < 1e-8);
                ++checked;
            }
        }
    }
    CHECK(checked > 100);
}
