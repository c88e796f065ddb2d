#pragma once

// Exact arithmetic in the ring of integers of M = Q(sqrt(q)) for the four
// fields q = 17, 41, 89, 97. All four have q = 1 (mod 8), class number one,
// and the rational prime 2 splits.

#include <gmpxx.h>

#include <optional>
#include <string>

#include "lnsieve/residue.hpp"

namespace lnsieve {

using Int = mpz_class;

bool is_supported_q(long q);
void require_supported_q(long q);

/// An element (u + v*sqrt(q))/2 of O_M with u = v (mod 2).
class QuadInt {
public:
    QuadInt(long q, Int u, Int v);

    static QuadInt from_int(long q, const Int& n);
    static QuadInt sqrt_q(long q);

    long q() const { return q_; }
    const Int& u() const { return u_; }
    const Int& v() const { return v_; }

    bool is_zero() const { return u_ == 0 && v_ == 0; }
    bool is_rational() const { return v_ == 0; }

    QuadInt conj() const { return QuadInt(q_, u_, -v_, Unchecked{}); }
    /// (u^2 - q v^2)/4, always an integer.
    Int norm() const;
    /// a + conj(a) = u.
    Int trace() const { return u_; }

    QuadInt operator-() const { return QuadInt(q_, -u_, -v_, Unchecked{}); }
    QuadInt& operator+=(const QuadInt& o);
    QuadInt& operator-=(const QuadInt& o);
    QuadInt& operator*=(const QuadInt& o);
    friend QuadInt operator+(QuadInt a, const QuadInt& b) { return a += b; }
    friend QuadInt operator-(QuadInt a, const QuadInt& b) { return a -= b; }
    friend QuadInt operator*(QuadInt a, const QuadInt& b) { return a *= b; }
    friend QuadInt operator*(long n, QuadInt a) {
        a.u_ *= n;
        a.v_ *= n;
        return a;
    }
    friend bool operator==(const QuadInt& a, const QuadInt& b) {
        return a.q_ == b.q_ && a.u_ == b.u_ && a.v_ == b.v_;
    }

    QuadInt pow(unsigned long e) const;
    /// a^e for a unit, negative e allowed.
    QuadInt unit_pow(long e) const;

    /// this / m if m divides this in O_M.
    std::optional<QuadInt> divide_exact(const QuadInt& m) const;

    /// Real embedding with sqrt(q) > 0 (sign = +1) or sqrt(q) < 0 (sign = -1).
    long double embed(int sign) const;

    std::string str() const;

private:
    struct Unchecked {};
    QuadInt(long q, Int u, Int v, Unchecked)
        : q_(q), u_(std::move(u)), v_(std::move(v)) {}
    void same_field(const QuadInt& o) const;

    long q_;
    Int u_;
    Int v_;
};

bool divides(const QuadInt& m, const QuadInt& a);
/// m | (a - b) in O_M.
bool congruent_mod(const QuadInt& a, const QuadInt& b, const QuadInt& m);

QuadInt fundamental_unit(long q);

struct FieldConstants {
    long q;
    QuadInt delta;
    QuadInt gamma;
    QuadInt gamma_bar;
};

FieldConstants constants(long q);

enum class SplitKind { split, inert, ramified };

const char* to_string(SplitKind k);

SplitKind splitting(long p, long q);

/// A prime of M above the rational prime p. Split primes above odd p are
/// identified by the root r of r^2 = q (mod p) with sqrt(q) = r (mod P);
/// primes above 2 and the ramified prime carry a generator.
struct PrimeIdealM {
    long q = 0;
    long p = 0;
    SplitKind kind = SplitKind::inert;
    long root = 0;
    std::optional<QuadInt> generator;

    /// Canonical prime above p: the smaller root in [0, p) for split p, or the
    /// other one when `conjugate` is set.
    static PrimeIdealM above(long p, long q, bool conjugate = false);
    /// Prime ideal generated by g; |norm(g)| must be prime.
    static PrimeIdealM generated_by(const QuadInt& g);

    long norm() const { return kind == SplitKind::inert ? p * p : p; }
    ResidueField residue_field() const;
    std::string str() const;
};

/// P-adic valuation of a nonzero element; throws InfiniteValuation for zero.
long val_at(const QuadInt& a, const PrimeIdealM& P);

/// Image of a in O_M / P.
ResidueElt reduce_mod(const QuadInt& a, const PrimeIdealM& P);

/// Image of sqrt(q) in O_M / P.
ResidueElt sqrt_q_image(const PrimeIdealM& P);

// Small integer helpers shared across modules.
long mod_pow(long base, long exp, long m);
long mod_floor(const Int& a, long m);
bool is_prime(long n);
/// Exact p-adic valuation of a nonzero integer.
long int_val(const Int& a, long p);
/// Smallest e >= 1 with q^e = 1 (mod p).
long multiplicative_order(long q, long p);

}  // namespace lnsieve
