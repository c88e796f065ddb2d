#include "lnsieve/local_curve.hpp"

#include "lnsieve/errors.hpp"
#include "lnsieve/quadfield.hpp"

namespace lnsieve {

const char* to_string(ReductionType t) {
    switch (t) {
    case ReductionType::good: return "good";
    case ReductionType::multiplicative: return "multiplicative";
    case ReductionType::additive: return "additive";
    }
    return "?";
}

LocalCurve LocalCurve::make(const ResidueElt& a2, const ResidueElt& a4) {
    if (!(a2.field() == a4.field())) throw DomainError("a2 and a4 live in different fields");
    const auto inv = weierstrass_invariants(a2, a4);
    return LocalCurve{a2.field(), a2, a4, inv.c4, inv.c6, inv.delta};
}

ReductionType LocalCurve::reduction_type() const {
    if (!delta.is_zero()) return ReductionType::good;
    return c4.is_zero() ? ReductionType::additive : ReductionType::multiplicative;
}

ResidueElt LocalCurve::rhs(const ResidueElt& x) const { return ((x + a2) * x + a4) * x; }

bool LocalCurve::contains(const ResidueElt& x, const ResidueElt& y) const { return y * y == rhs(x); }

std::string LocalCurve::str() const {
    return "Y^2 = X^3 + (" + a2.str() + ")X^2 + (" + a4.str() + ")X over F_" +
           std::to_string(field.p) + (field.degree == 2 ? "^2" : "");
}

long trace_of_frobenius(const LocalCurve& C) {
    if (C.delta.is_zero()) throw SingularCurve("trace_of_frobenius: singular curve " + C.str());
    const auto chi = C.field.quadratic_character_table();
    long sum = 0;
    for (long i = 0; i < C.field.size(); ++i)
        sum += chi[static_cast<size_t>(C.rhs(C.field.element(i)).index())];
    return -sum;
}

long reduction_trace(const LocalCurve& C) {
    switch (C.reduction_type()) {
    case ReductionType::good: return trace_of_frobenius(C);
    case ReductionType::multiplicative: {
        const long n1 = C.field.size() + 1;
        const ResidueElt ratio = -C.c6 * C.c4.inverse();
        return is_square(ratio) ? n1 : -n1;
    }
    case ReductionType::additive: break;
    }
    throw SingularCurve("reduction_trace: additive degeneration (Delta = c4 = 0) for " + C.str());
}

long count_points_naive(const LocalCurve& C) {
    if (C.field.size() > 10000) throw DomainError("count_points_naive: field too large");
    long count = 1;
    for (long i = 0; i < C.field.size(); ++i) {
        const ResidueElt x = C.field.element(i);
        const ResidueElt r = C.rhs(x);
        for (long j = 0; j < C.field.size(); ++j) {
            const ResidueElt y = C.field.element(j);
            if (y * y == r) ++count;
        }
    }
    return count;
}

// --- rational curves ---------------------------------------------------------

namespace {

struct BInvariants {
    mpz_class b2, b4, b6, b8;
};

BInvariants b_invariants(const std::array<long, 5>& a) {
    const mpz_class a1 = a[0], a2 = a[1], a3 = a[2], a4 = a[3], a6 = a[4];
    BInvariants b;
    b.b2 = a1 * a1 + 4 * a2;
    b.b4 = 2 * a4 + a1 * a3;
    b.b6 = a3 * a3 + 4 * a6;
    b.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    return b;
}

}  // namespace

mpz_class RationalCurve::discriminant() const {
    const auto b = b_invariants(a);
    return -b.b2 * b.b2 * b.b8 - 8 * b.b4 * b.b4 * b.b4 - 27 * b.b6 * b.b6 + 9 * b.b2 * b.b4 * b.b6;
}

mpz_class RationalCurve::c4() const {
    const auto b = b_invariants(a);
    return b.b2 * b.b2 - 24 * b.b4;
}

mpz_class RationalCurve::c6() const {
    const auto b = b_invariants(a);
    return -b.b2 * b.b2 * b.b2 + 36 * b.b2 * b.b4 - 216 * b.b6;
}

std::string RationalCurve::str() const {
    std::string s = "[";
    for (size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
    return s + "]";
}

namespace {

void require_good(const RationalCurve& E, long p) {
    if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
    if (mpz_divisible_ui_p(E.discriminant().get_mpz_t(), static_cast<unsigned long>(p)))
        throw SingularCurve("curve " + E.str() + " has bad reduction at " + std::to_string(p));
}

long mod(long x, long p) {
    x %= p;
    return x < 0 ? x + p : x;
}

}  // namespace

long rational_curve_ap(const RationalCurve& E, long p) {
    require_good(E, p);
    const auto& a = E.a;
    if (p == 2) return p + 1 - count_points_naive(E, p);
    // Complete the square: (2y + a1 x + a3)^2 = 4(x^3 + a2 x^2 + a4 x + a6) + (a1 x + a3)^2.
    long sum = 0;
    for (long x = 0; x < p; ++x) {
        const long lin = mod(a[0] * x + a[2], p);
        const long cub = mod(mod(mod(x * x, p) * x, p) + mod(a[1], p) * mod(x * x, p) + mod(a[3], p) * x + a[4], p);
        const long d = mod(4 * cub + lin * lin, p);
        if (d != 0) sum += mod_pow(d, (p - 1) / 2, p) == 1 ? 1 : -1;
    }
    return -sum;
}

long count_points_naive(const RationalCurve& E, long p) {
    if (p > 10000) throw DomainError("count_points_naive: field too large");
    const auto& a = E.a;
    long count = 1;
    for (long x = 0; x < p; ++x) {
        for (long y = 0; y < p; ++y) {
            const long lhs = mod(y * y + a[0] * x % p * y + a[2] * y, p);
            const long rhs = mod(x * x % p * x + a[1] * x % p * x + a[3] * x + a[4], p);
            if (lhs == rhs) ++count;
        }
    }
    return count;
}

}  // namespace lnsieve
