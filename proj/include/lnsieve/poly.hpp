#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace lnsieve {

/// Dense univariate polynomial over Z, coefficients in increasing degree.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<mpz_class> coeffs);
    IntPoly(std::initializer_list<long> coeffs);

    static IntPoly monomial(const mpz_class& c, size_t deg);

    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    const std::vector<mpz_class>& coeffs() const { return c_; }
    mpz_class coeff(size_t i) const { return i < c_.size() ? c_[i] : mpz_class(0); }
    const mpz_class& lead() const { return c_.back(); }

    mpz_class eval(const mpz_class& x) const;
    /// P(x + s)
    IntPoly shift(const mpz_class& s) const;

    IntPoly& operator+=(const IntPoly& o);
    IntPoly& operator-=(const IntPoly& o);
    friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
    friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

    std::string str() const;

private:
    void trim();
    std::vector<mpz_class> c_;
};

/// Res(a, b) = lc(a)^deg(b) * prod_{a(r)=0} b(r), as the Sylvester
/// determinant evaluated by fraction-free (Bareiss) elimination.
mpz_class resultant(const IntPoly& a, const IntPoly& b);

/// Charpoly of alpha^2 + 2p given the charpoly C of alpha:
/// D(x) = Res_y(C(y), (x - 2p) - y^2), computed by one Euclidean step in
/// Z[x][y] (reduce C modulo y^2 - z, then take the resultant of the linear
/// remainder with the quadratic).
IntPoly inert_t_charpoly(const IntPoly& C, long p);

}  // namespace lnsieve
