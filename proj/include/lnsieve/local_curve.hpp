#pragma once

// Curves Y^2 = X^3 + a2 X^2 + a4 X over residue fields, their invariants,
// Frobenius traces and the good / multiplicative / additive trichotomy.

#include <gmpxx.h>

#include <array>
#include <string>

#include "lnsieve/residue.hpp"

namespace lnsieve {

template <class R>
struct Invariants {
    R c4;
    R c6;
    R delta;
};

/// c4 = 16a2^2 - 48a4, c6 = -64a2^3 + 288a2a4, Delta = 16a4^2(a2^2 - 4a4).
/// Works over any commutative ring supporting `long * R`.
template <class R>
Invariants<R> weierstrass_invariants(const R& a2, const R& a4) {
    const R a2sq = a2 * a2;
    return Invariants<R>{16 * a2sq - 48 * a4, -64 * (a2sq * a2) + 288 * (a2 * a4),
                         16 * (a4 * a4) * (a2sq - 4 * a4)};
}

enum class ReductionType { good, multiplicative, additive };

const char* to_string(ReductionType t);

struct LocalCurve {
    ResidueField field;
    ResidueElt a2;
    ResidueElt a4;
    ResidueElt c4;
    ResidueElt c6;
    ResidueElt delta;

    static LocalCurve make(const ResidueElt& a2, const ResidueElt& a4);

    ReductionType reduction_type() const;
    /// Right-hand side x^3 + a2 x^2 + a4 x.
    ResidueElt rhs(const ResidueElt& x) const;
    bool contains(const ResidueElt& x, const ResidueElt& y) const;
    std::string str() const;
};

/// |F| + 1 - #C(F) by the character sum -sum_x chi_2(x^3 + a2 x^2 + a4 x).
/// Throws SingularCurve when Delta = 0.
long trace_of_frobenius(const LocalCurve& C);

/// Trace of Frobenius on the mod-n representation attached to the residue
/// class: a_P for good reduction, +-(|F| + 1) for multiplicative reduction
/// according to whether -c6/c4 is a square. Throws SingularCurve for the
/// additive case (Delta = c4 = 0).
long reduction_trace(const LocalCurve& C);

/// Point count by double loop over (x, y), point at infinity included.
/// Limited to |F| <= 10^4.
long count_points_naive(const LocalCurve& C);

/// Long Weierstrass model over Z: y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
struct RationalCurve {
    std::array<long, 5> a;  // a1, a2, a3, a4, a6

    mpz_class discriminant() const;
    mpz_class c4() const;
    mpz_class c6() const;
    std::string str() const;
};

/// a_p of the reduction mod p; throws SingularCurve at primes of bad reduction.
long rational_curve_ap(const RationalCurve& E, long p);

/// Independent enumeration of #E(F_p) (affine double loop plus infinity).
long count_points_naive(const RationalCurve& E, long p);

}  // namespace lnsieve
