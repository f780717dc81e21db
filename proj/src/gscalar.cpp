#include "multiplet/gscalar.hpp"

#include <cmath>
#include <cstdint>
#include <ostream>

#include "multiplet/errors.hpp"

namespace multiplet {

namespace {

void check(double re, double im) {
    if (!std::isfinite(re) || !std::isfinite(im)) throw NonFiniteValue("non-finite scalar");
}

GScalar int_power(GScalar base, std::uint64_t n) {
    GScalar acc(1.0);
    while (n) {
        if (n & 1u) acc *= base;
        n >>= 1u;
        if (n) base *= base;
    }
    return acc;
}

}  // namespace

GScalar::GScalar(double re) : re_(re), im_(0.0) { check(re_, im_); }

GScalar::GScalar(double re, double im) : re_(re), im_(im) { check(re_, im_); }

GScalar::GScalar(std::complex<double> z) : re_(z.real()), im_(z.imag()) { check(re_, im_); }

double GScalar::modulus() const noexcept { return std::hypot(re_, im_); }

GScalar& GScalar::operator+=(const GScalar& o) {
    re_ += o.re_;
    im_ += o.im_;
    check(re_, im_);
    return *this;
}

GScalar& GScalar::operator-=(const GScalar& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    check(re_, im_);
    return *this;
}

GScalar& GScalar::operator*=(const GScalar& o) {
    if (im_ == 0.0 && o.im_ == 0.0) {
        re_ *= o.re_;
    } else {
        const double r = re_ * o.re_ - im_ * o.im_;
        const double i = re_ * o.im_ + im_ * o.re_;
        re_ = r;
        im_ = i;
    }
    check(re_, im_);
    return *this;
}

GScalar& GScalar::operator/=(const GScalar& o) {
    if (o.re_ == 0.0 && o.im_ == 0.0) throw DegenerateDenominator(0.0, "division by zero");
    if (im_ == 0.0 && o.im_ == 0.0) {
        re_ /= o.re_;
    } else {
        const std::complex<double> z = std::complex<double>(re_, im_) / o.complex();
        re_ = z.real();
        im_ = z.imag();
    }
    check(re_, im_);
    return *this;
}

GScalar power(const GScalar& z, double p) {
    if (p == 0.0) return GScalar(1.0);
    const bool zero = z.re() == 0.0 && z.im() == 0.0;
    if (zero) {
        if (p < 0.0) throw DegenerateDenominator(0.0, "zero raised to a negative power");
        return GScalar(0.0);
    }
    const bool integral = std::trunc(p) == p && std::fabs(p) < 9.0e15;
    if (z.is_real() && (integral || z.re() > 0.0)) return GScalar(std::pow(z.re(), p));
    if (integral) {
        const auto n = static_cast<std::uint64_t>(std::fabs(p));
        GScalar r = int_power(z, n);
        return p < 0.0 ? GScalar(1.0) / r : r;
    }
    return GScalar(std::exp(p * std::log(z.complex())));
}

GScalar log(const GScalar& z) {
    if (z.re() == 0.0 && z.im() == 0.0) throw DegenerateDenominator(0.0, "log of zero");
    if (z.is_real() && z.re() > 0.0) return GScalar(std::log(z.re()));
    return GScalar(std::log(z.complex()));
}

std::ostream& operator<<(std::ostream& os, const GScalar& z) {
    os << z.re();
    if (!z.is_real()) os << (z.im() < 0 ? "-" : "+") << std::fabs(z.im()) << 'i';
    return os;
}

}  // namespace multiplet
