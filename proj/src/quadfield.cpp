#include "lnsieve/quadfield.hpp"

#include <cmath>

#include "lnsieve/errors.hpp"

namespace lnsieve {

bool is_supported_q(long q) { return q == 17 || q == 41 || q == 89 || q == 97; }

void require_supported_q(long q) {
    if (!is_supported_q(q)) throw UnsupportedField(q);
}

long mod_pow(long base, long exp, long m) {
    long result = 1 % m;
    long b = ((base % m) + m) % m;
    while (exp > 0) {
        if (exp & 1) result = static_cast<long>((static_cast<__int128>(result) * b) % m);
        b = static_cast<long>((static_cast<__int128>(b) * b) % m);
        exp >>= 1;
    }
    return result;
}

long mod_floor(const Int& a, long m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r.get_si();
}

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

long int_val(const Int& a, long p) {
    if (a == 0) throw InfiniteValuation();
    Int t = abs(a);
    long e = 0;
    while (mpz_divisible_ui_p(t.get_mpz_t(), static_cast<unsigned long>(p))) {
        t /= p;
        ++e;
    }
    return e;
}

long multiplicative_order(long q, long p) {
    const long base = ((q % p) + p) % p;
    if (base == 0) throw DomainError("q is not a unit mod p");
    long e = 1;
    for (long x = base; x != 1; x = (x * base) % p) ++e;
    return e;
}

// --- QuadInt ---------------------------------------------------------------

QuadInt::QuadInt(long q, Int u, Int v) : q_(q), u_(std::move(u)), v_(std::move(v)) {
    require_supported_q(q);
    Int d = u_ - v_;
    if (!mpz_even_p(d.get_mpz_t()))
        throw DomainError("(u + v*sqrt(q))/2 needs u = v (mod 2), got u=" + u_.get_str() +
                          " v=" + v_.get_str());
}

QuadInt QuadInt::from_int(long q, const Int& n) { return QuadInt(q, 2 * n, 0); }

QuadInt QuadInt::sqrt_q(long q) { return QuadInt(q, 0, 2); }

void QuadInt::same_field(const QuadInt& o) const {
    if (q_ != o.q_)
        throw DomainError("mixed fields: q=" + std::to_string(q_) + " and q=" + std::to_string(o.q_));
}

Int QuadInt::norm() const { return (u_ * u_ - q_ * v_ * v_) / 4; }

QuadInt& QuadInt::operator+=(const QuadInt& o) {
    same_field(o);
    u_ += o.u_;
    v_ += o.v_;
    return *this;
}

QuadInt& QuadInt::operator-=(const QuadInt& o) {
    same_field(o);
    u_ -= o.u_;
    v_ -= o.v_;
    return *this;
}

QuadInt& QuadInt::operator*=(const QuadInt& o) {
    same_field(o);
    Int u = (u_ * o.u_ + q_ * v_ * o.v_) / 2;
    Int v = (u_ * o.v_ + v_ * o.u_) / 2;
    u_ = std::move(u);
    v_ = std::move(v);
    return *this;
}

QuadInt QuadInt::pow(unsigned long e) const {
    QuadInt result = from_int(q_, 1);
    QuadInt base = *this;
    while (e > 0) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

QuadInt QuadInt::unit_pow(long e) const {
    if (e >= 0) return pow(static_cast<unsigned long>(e));
    const Int n = norm();
    if (n != 1 && n != -1) throw DomainError("negative power of a non-unit " + str());
    QuadInt inv = conj();
    if (n == -1) inv = -inv;
    return inv.pow(static_cast<unsigned long>(-e));
}

std::optional<QuadInt> QuadInt::divide_exact(const QuadInt& m) const {
    same_field(m);
    const Int n = m.norm();
    if (n == 0) throw DomainError("division by zero in O_M");
    QuadInt t = *this * m.conj();
    if (!mpz_divisible_p(t.u_.get_mpz_t(), n.get_mpz_t()) ||
        !mpz_divisible_p(t.v_.get_mpz_t(), n.get_mpz_t()))
        return std::nullopt;
    Int u = t.u_ / n;
    Int v = t.v_ / n;
    Int d = u - v;
    if (!mpz_even_p(d.get_mpz_t())) return std::nullopt;
    return QuadInt(q_, std::move(u), std::move(v), Unchecked{});
}

namespace {

long double to_long_double(const Int& a) {
    if (a == 0) return 0.0L;
    long exp = 0;
    const double mant = mpz_get_d_2exp(&exp, a.get_mpz_t());
    return std::ldexp(static_cast<long double>(mant), static_cast<int>(exp));
}

}  // namespace

long double QuadInt::embed(int sign) const {
    const long double s = std::sqrt(static_cast<long double>(q_));
    const long double u = to_long_double(u_);
    const long double vs = to_long_double(v_) * s;
    const long double plus = (u + vs) / 2;
    const long double minus = (u - vs) / 2;
    // The embedding of larger magnitude is accurate; recover the other from
    // the exact norm to avoid cancellation.
    const long double n = to_long_double(norm());
    if (sign > 0) return std::fabs(plus) >= std::fabs(minus) || minus == 0 ? plus : n / minus;
    return std::fabs(minus) >= std::fabs(plus) || plus == 0 ? minus : n / plus;
}

std::string QuadInt::str() const {
    return "(" + u_.get_str() + (v_ < 0 ? " - " : " + ") + Int(abs(v_)).get_str() + "*sqrt(" +
           std::to_string(q_) + "))/2";
}

bool divides(const QuadInt& m, const QuadInt& a) { return a.divide_exact(m).has_value(); }

bool congruent_mod(const QuadInt& a, const QuadInt& b, const QuadInt& m) {
    if (m.is_zero()) throw DomainError("congruence modulo zero");
    return divides(m, a - b);
}

QuadInt fundamental_unit(long q) {
    // Units of norm -1 from the continued fraction of sqrt(q); see tests for
    // the brute-force check that they generate the unit group mod +-1.
    switch (q) {
    case 17: return QuadInt(q, 8, 2);
    case 41: return QuadInt(q, 64, 10);
    case 89: return QuadInt(q, 1000, 106);
    case 97: return QuadInt(q, 11208, 1138);
    default: throw UnsupportedField(q);
    }
}

FieldConstants constants(long q) {
    QuadInt gamma = [q] {
        switch (q) {
        case 17: return QuadInt(q, -3, 1);
        case 41: return QuadInt(q, -19, -3);
        case 89: return QuadInt(q, 9, 1);
        case 97: return QuadInt(q, 325, 33);
        default: throw UnsupportedField(q);
        }
    }();
    QuadInt gamma_bar = gamma.conj();
    return FieldConstants{q, fundamental_unit(q), std::move(gamma), std::move(gamma_bar)};
}

// --- primes ----------------------------------------------------------------

const char* to_string(SplitKind k) {
    switch (k) {
    case SplitKind::split: return "split";
    case SplitKind::inert: return "inert";
    case SplitKind::ramified: return "ramified";
    }
    return "?";
}

SplitKind splitting(long p, long q) {
    if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
    if (p == q) return SplitKind::ramified;
    if (p == 2) return (q % 8 == 1) ? SplitKind::split : SplitKind::inert;
    return mod_pow(q, (p - 1) / 2, p) == 1 ? SplitKind::split : SplitKind::inert;
}

PrimeIdealM PrimeIdealM::above(long p, long q, bool conjugate) {
    require_supported_q(q);
    PrimeIdealM P;
    P.q = q;
    P.p = p;
    P.kind = splitting(p, q);
    if (P.kind == SplitKind::ramified) {
        P.generator = QuadInt::sqrt_q(q);
    } else if (P.kind == SplitKind::split && p == 2) {
        const FieldConstants c = constants(q);
        P.root = 1;
        P.generator = conjugate ? c.gamma_bar : c.gamma;
    } else if (P.kind == SplitKind::split) {
        long r = 0;
        while ((r * r - q) % p != 0) ++r;
        P.root = conjugate ? p - r : r;
    }
    return P;
}

PrimeIdealM PrimeIdealM::generated_by(const QuadInt& g) {
    const Int n = abs(g.norm());
    if (!n.fits_slong_p() || !is_prime(n.get_si()))
        throw DomainError("generator " + g.str() + " does not have prime norm");
    PrimeIdealM P;
    P.q = g.q();
    P.p = n.get_si();
    P.generator = g;
    if (P.p == g.q()) {
        P.kind = SplitKind::ramified;
    } else {
        P.kind = SplitKind::split;
        if (P.p == 2) {
            P.root = 1;
        } else {
            // g = 0 mod P  <=>  u + v r = 0 (mod p)
            const long u = mod_floor(g.u(), P.p);
            const long v = mod_floor(g.v(), P.p);
            P.root = mod_floor(Int(-u) * mod_pow(v, P.p - 2, P.p), P.p);
        }
    }
    return P;
}

ResidueField PrimeIdealM::residue_field() const {
    if (kind == SplitKind::inert) return ResidueField::quadratic(p, q % p);
    return ResidueField::prime(p);
}

std::string PrimeIdealM::str() const {
    if (generator) return "(" + generator->str() + ")";
    if (kind == SplitKind::inert) return "(" + std::to_string(p) + ")";
    return "(" + std::to_string(p) + ", sqrt(" + std::to_string(q) + ") - " + std::to_string(root) + ")";
}

namespace {

// sqrt(q) lifted to Z/p^k starting from the root r (p odd, p does not divide q).
Int hensel_root(long r, long q, long p, long k) {
    Int rho = r;
    Int mod = p;
    for (long i = 1; i < k; ++i) {
        mod *= p;
        Int f = rho * rho - q;
        Int inv;
        Int two_rho = 2 * rho;
        mpz_invert(inv.get_mpz_t(), two_rho.get_mpz_t(), mod.get_mpz_t());
        rho = rho - f * inv;
        rho %= mod;
        if (rho < 0) rho += mod;
    }
    return rho;
}

}  // namespace

long val_at(const QuadInt& a, const PrimeIdealM& P) {
    if (a.q() != P.q) throw DomainError("element and prime from different fields");
    if (a.is_zero()) throw InfiniteValuation();
    if (P.generator) {
        long e = 0;
        QuadInt t = a;
        while (auto d = t.divide_exact(*P.generator)) {
            t = std::move(*d);
            ++e;
        }
        return e;
    }
    switch (P.kind) {
    case SplitKind::ramified: return int_val(a.norm(), P.q);
    case SplitKind::inert: {
        long e = a.u() == 0 ? int_val(a.v(), P.p) : int_val(a.u(), P.p);
        if (a.v() != 0) e = std::min(e, int_val(a.v(), P.p));
        return e;
    }
    case SplitKind::split: {
        const long k = int_val(a.norm(), P.p) + 1;
        Int mod;
        mpz_ui_pow_ui(mod.get_mpz_t(), static_cast<unsigned long>(P.p), static_cast<unsigned long>(k));
        Int t = (a.u() + a.v() * hensel_root(P.root, P.q, P.p, k)) % mod;
        if (t == 0) return k;
        return int_val(t, P.p);
    }
    }
    return 0;
}

ResidueElt reduce_mod(const QuadInt& a, const PrimeIdealM& P) {
    if (a.q() != P.q) throw DomainError("element and prime from different fields");
    const ResidueField F = P.residue_field();
    if (P.p == 2) return F.from_int(divides(*P.generator, a) ? 0 : 1);
    const ResidueElt half = F.from_int(2).inverse();
    const long u = mod_floor(a.u(), P.p);
    const long v = mod_floor(a.v(), P.p);
    switch (P.kind) {
    case SplitKind::ramified: return F.from_int(u) * half;
    case SplitKind::split: return F.from_int(u + v * P.root) * half;
    case SplitKind::inert: return F.make(u, v) * half;
    }
    return F.zero();
}

ResidueElt sqrt_q_image(const PrimeIdealM& P) { return reduce_mod(QuadInt::sqrt_q(P.q), P); }

}  // namespace lnsieve
