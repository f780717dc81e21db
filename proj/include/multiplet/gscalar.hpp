#pragma once

#include <complex>
#include <iosfwd>

namespace multiplet {

/// Real-or-complex scalar.  Components are always finite; any operation that
/// would leave them non-finite throws NonFiniteValue instead.
class GScalar {
public:
    constexpr GScalar() = default;
    GScalar(double re);  // NOLINT: implicit on purpose, reals are the common case
    GScalar(double re, double im);
    explicit GScalar(std::complex<double> z);

    double re() const noexcept { return re_; }
    double im() const noexcept { return im_; }
    bool is_real() const noexcept { return im_ == 0.0; }
    double modulus() const noexcept;
    std::complex<double> complex() const noexcept { return {re_, im_}; }

    GScalar& operator+=(const GScalar& o);
    GScalar& operator-=(const GScalar& o);
    GScalar& operator*=(const GScalar& o);
    GScalar& operator/=(const GScalar& o);

    friend GScalar operator+(GScalar a, const GScalar& b) { return a += b; }
    friend GScalar operator-(GScalar a, const GScalar& b) { return a -= b; }
    friend GScalar operator*(GScalar a, const GScalar& b) { return a *= b; }
    friend GScalar operator/(GScalar a, const GScalar& b) { return a /= b; }
    friend GScalar operator-(const GScalar& a) { return GScalar(-a.re_, -a.im_); }

    friend bool operator==(const GScalar& a, const GScalar& b) noexcept {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

private:
    double re_ = 0.0;
    double im_ = 0.0;
};

/// z^p.  Integer p on complex z uses repeated squaring (no branch cut);
/// otherwise the principal branch.  0^p with p<0 throws DegenerateDenominator.
GScalar power(const GScalar& z, double p);

/// Principal natural log.  Throws on zero.
GScalar log(const GScalar& z);

std::ostream& operator<<(std::ostream& os, const GScalar& z);

}  // namespace multiplet
