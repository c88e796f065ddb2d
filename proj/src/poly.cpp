#include "lnsieve/poly.hpp"

#include <utility>

#include "lnsieve/errors.hpp"

namespace lnsieve {

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
    for (long c : coeffs) c_.emplace_back(c);
    trim();
}

IntPoly IntPoly::monomial(const mpz_class& c, size_t deg) {
    std::vector<mpz_class> v(deg + 1);
    v[deg] = c;
    return IntPoly(std::move(v));
}

void IntPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

mpz_class IntPoly::eval(const mpz_class& x) const {
    mpz_class r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
}

IntPoly IntPoly::shift(const mpz_class& s) const {
    // Repeated synthetic division (Taylor shift), O(d^2).
    std::vector<mpz_class> c = c_;
    const long n = static_cast<long>(c.size());
    for (long i = 0; i < n; ++i)
        for (long j = n - 2; j >= i; --j) c[j] += s * c[j + 1];
    return IntPoly(std::move(c));
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return IntPoly();
    std::vector<mpz_class> c(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return IntPoly(std::move(c));
}

std::string IntPoly::str() const {
    if (c_.empty()) return "0";
    std::string s;
    for (long i = degree(); i >= 0; --i) {
        const mpz_class& c = c_[static_cast<size_t>(i)];
        if (c == 0) continue;
        if (!s.empty()) s += c < 0 ? " - " : " + ";
        else if (c < 0) s += "-";
        const mpz_class a = abs(c);
        if (a != 1 || i == 0) s += a.get_str();
        if (i > 0) s += (a != 1 ? "*x" : "x") + (i > 1 ? "^" + std::to_string(i) : "");
    }
    return s;
}

mpz_class resultant(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return 0;
    const long m = a.degree();
    const long n = b.degree();
    if (m == 0 && n == 0) return 1;
    const long size = m + n;
    if (size == 0) return 1;
    // Sylvester matrix: n rows of a's coefficients, then m rows of b's,
    // highest degree first.
    std::vector<std::vector<mpz_class>> M(static_cast<size_t>(size), std::vector<mpz_class>(static_cast<size_t>(size)));
    for (long r = 0; r < n; ++r)
        for (long i = 0; i <= m; ++i) M[r][r + i] = a.coeff(static_cast<size_t>(m - i));
    for (long r = 0; r < m; ++r)
        for (long i = 0; i <= n; ++i) M[n + r][r + i] = b.coeff(static_cast<size_t>(n - i));

    int sign = 1;
    mpz_class prev = 1;
    for (long k = 0; k < size - 1; ++k) {
        if (M[k][k] == 0) {
            long swap = -1;
            for (long r = k + 1; r < size; ++r)
                if (M[r][k] != 0) {
                    swap = r;
                    break;
                }
            if (swap < 0) return 0;
            std::swap(M[k], M[swap]);
            sign = -sign;
        }
        for (long i = k + 1; i < size; ++i) {
            for (long j = k + 1; j < size; ++j) {
                M[i][j] = M[i][j] * M[k][k] - M[i][k] * M[k][j];
                mpz_divexact(M[i][j].get_mpz_t(), M[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            M[i][k] = 0;
        }
        prev = M[k][k];
    }
    return sign * M[size - 1][size - 1];
}

IntPoly inert_t_charpoly(const IntPoly& C, long p) {
    if (!C.is_monic()) throw DomainError("inert_t_charpoly: charpoly must be monic, got " + C.str());
    const long d = C.degree();
    // C(y) = E(z) + y*O(z) modulo y^2 - z.
    std::vector<mpz_class> even, odd;
    for (long i = 0; i <= d; ++i) (i % 2 == 0 ? even : odd).push_back(C.coeff(static_cast<size_t>(i)));
    const IntPoly E(std::move(even));
    const IntPoly O(std::move(odd));
    // B(y) = -y^2 + z has leading coefficient -1; Res(C, B) = Res(B, C)
    // = (-1)^(d - deg R) Res(B, R) with R = O*y + E.
    const IntPoly z{0, 1};
    IntPoly res;
    long deg_r = 0;
    if (!O.is_zero()) {
        res = z * O * O - E * E;
        deg_r = 1;
    } else {
        res = E * E;
    }
    if ((d - deg_r) % 2 != 0) res = IntPoly() - res;
    return res.shift(-2 * p);
}

}  // namespace lnsieve
