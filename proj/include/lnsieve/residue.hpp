#pragma once

// Residue fields F_p and F_{p^2} = F_p(s), s^2 = nonres, for small odd p.

#include <cstdint>
#include <string>
#include <vector>

namespace lnsieve {

class ResidueElt;

struct ResidueField {
    long p = 0;
    int degree = 1;
    // s^2 = nonres in F_{p^2}; unused for degree 1.
    long nonres = 0;

    static ResidueField prime(long p);
    static ResidueField quadratic(long p, long nonres);

    long size() const { return degree == 1 ? p : p * p; }

    ResidueElt zero() const;
    ResidueElt one() const;
    ResidueElt from_int(long n) const;
    ResidueElt make(long a, long b) const;
    /// The adjoined square root s (degree 2 only).
    ResidueElt gen() const;
    /// Element with index i in [0, size()): a + b*s with i = a + b*p.
    ResidueElt element(long i) const;

    /// chi_2 of every element, indexed as element(i); chi_2(0) = 0.
    std::vector<int8_t> quadratic_character_table() const;

    friend bool operator==(const ResidueField& x, const ResidueField& y) {
        return x.p == y.p && x.degree == y.degree &&
               (x.degree == 1 || x.nonres == y.nonres);
    }
};

/// a + b*s in a ResidueField; coordinates kept in [0, p).
class ResidueElt {
public:
    ResidueElt() = default;
    ResidueElt(const ResidueField& f, long a, long b);

    const ResidueField& field() const { return f_; }
    long a() const { return a_; }
    long b() const { return b_; }
    long index() const { return a_ + b_ * f_.p; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }

    ResidueElt operator-() const;
    ResidueElt& operator+=(const ResidueElt& o);
    ResidueElt& operator-=(const ResidueElt& o);
    ResidueElt& operator*=(const ResidueElt& o);
    friend ResidueElt operator+(ResidueElt x, const ResidueElt& y) { return x += y; }
    friend ResidueElt operator-(ResidueElt x, const ResidueElt& y) { return x -= y; }
    friend ResidueElt operator*(ResidueElt x, const ResidueElt& y) { return x *= y; }
    friend ResidueElt operator*(long n, const ResidueElt& y) { return y.field().from_int(n) * y; }
    friend bool operator==(const ResidueElt& x, const ResidueElt& y) {
        return x.f_ == y.f_ && x.a_ == y.a_ && x.b_ == y.b_;
    }

    ResidueElt pow(long e) const;
    /// Throws DomainError on zero.
    ResidueElt inverse() const;

    std::string str() const;

private:
    void same_field(const ResidueElt& o) const;

    ResidueField f_;
    long a_ = 0;
    long b_ = 0;
};

/// Euler's criterion x^((|F|-1)/2) = 1. Throws DomainError for x = 0.
bool is_square(const ResidueElt& x);

/// chi_2(x) in {-1, 0, 1}.
int quadratic_character(const ResidueElt& x);

}  // namespace lnsieve
