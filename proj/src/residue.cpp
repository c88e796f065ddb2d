#include "lnsieve/residue.hpp"

#include "lnsieve/errors.hpp"

namespace lnsieve {

namespace {

long norm_mod(long x, long p) {
    x %= p;
    return x < 0 ? x + p : x;
}

}  // namespace

ResidueField ResidueField::prime(long p) {
    if (p < 2) throw DomainError("residue field characteristic must be prime, got " + std::to_string(p));
    return ResidueField{p, 1, 0};
}

ResidueField ResidueField::quadratic(long p, long nonres) {
    if (p < 3) throw DomainError("F_p^2 is only supported for odd p");
    ResidueField f = prime(p);
    f.degree = 2;
    f.nonres = norm_mod(nonres, p);
    if (f.nonres == 0 || f.from_int(f.nonres).pow((p - 1) / 2) == f.one())
        throw DomainError("F_p^2 needs a non-residue mod " + std::to_string(p));
    return f;
}

ResidueElt ResidueField::zero() const { return ResidueElt(*this, 0, 0); }
ResidueElt ResidueField::one() const { return ResidueElt(*this, 1, 0); }
ResidueElt ResidueField::from_int(long n) const { return ResidueElt(*this, n, 0); }
ResidueElt ResidueField::make(long a, long b) const { return ResidueElt(*this, a, b); }

ResidueElt ResidueField::gen() const {
    if (degree != 2) throw DomainError("F_p has no adjoined square root");
    return ResidueElt(*this, 0, 1);
}

ResidueElt ResidueField::element(long i) const { return ResidueElt(*this, i % p, i / p); }

std::vector<int8_t> ResidueField::quadratic_character_table() const {
    std::vector<int8_t> chi(static_cast<size_t>(size()), -1);
    chi[0] = 0;
    // Mark squares by squaring every element.
    for (long i = 1; i < size(); ++i) {
        ResidueElt x = element(i);
        chi[static_cast<size_t>((x * x).index())] = 1;
    }
    return chi;
}

ResidueElt::ResidueElt(const ResidueField& f, long a, long b)
    : f_(f), a_(norm_mod(a, f.p)), b_(f.degree == 2 ? norm_mod(b, f.p) : 0) {
    if (f.degree == 1 && norm_mod(b, f.p) != 0)
        throw DomainError("nonzero s-coordinate in a prime field");
}

void ResidueElt::same_field(const ResidueElt& o) const {
    if (!(f_ == o.f_)) throw DomainError("residue elements from different fields");
}

ResidueElt ResidueElt::operator-() const { return ResidueElt(f_, -a_, -b_); }

ResidueElt& ResidueElt::operator+=(const ResidueElt& o) {
    same_field(o);
    a_ = norm_mod(a_ + o.a_, f_.p);
    b_ = norm_mod(b_ + o.b_, f_.p);
    return *this;
}

ResidueElt& ResidueElt::operator-=(const ResidueElt& o) {
    same_field(o);
    a_ = norm_mod(a_ - o.a_, f_.p);
    b_ = norm_mod(b_ - o.b_, f_.p);
    return *this;
}

ResidueElt& ResidueElt::operator*=(const ResidueElt& o) {
    same_field(o);
    const long p = f_.p;
    if (f_.degree == 1) {
        a_ = (a_ * o.a_) % p;
        return *this;
    }
    const long a = (a_ * o.a_ + (b_ * o.b_) % p * f_.nonres) % p;
    const long b = (a_ * o.b_ + b_ * o.a_) % p;
    a_ = a;
    b_ = b;
    return *this;
}

ResidueElt ResidueElt::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    ResidueElt result = f_.one();
    ResidueElt base = *this;
    while (e > 0) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

ResidueElt ResidueElt::inverse() const {
    if (is_zero()) throw DomainError("inverse of zero in " + std::to_string(f_.p) + "^" +
                                     std::to_string(f_.degree));
    return pow(f_.size() - 2);
}

std::string ResidueElt::str() const {
    if (f_.degree == 1) return std::to_string(a_);
    return std::to_string(a_) + "+" + std::to_string(b_) + "s";
}

bool is_square(const ResidueElt& x) {
    if (x.is_zero()) throw DomainError("is_square: zero has no quadratic character");
    return x.pow((x.field().size() - 1) / 2) == x.field().one();
}

int quadratic_character(const ResidueElt& x) {
    if (x.is_zero()) return 0;
    return is_square(x) ? 1 : -1;
}

}  // namespace lnsieve
