#include "multiplet/means.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <mutex>
#include <sstream>

#include "multiplet/errors.hpp"

namespace multiplet {

namespace {

std::mutex g_warn_mutex;
WarningHandler g_warn_handler = [](const PrecisionWarning& w) {
    std::cerr << "warning: " << w.message << '\n';
};

}  // namespace

WarningHandler set_warning_handler(WarningHandler handler) {
    std::lock_guard lock(g_warn_mutex);
    std::swap(handler, g_warn_handler);
    return handler;
}

ElementVector to_elements(std::span<const double> values) {
    return ElementVector(values.begin(), values.end());
}

void validate_elements(std::span<const GScalar> x) {
    if (x.empty()) throw InvalidArgument("element vector must not be empty");
}

void validate_weights(std::span<const double> w) {
    bool any = false;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!std::isfinite(w[i]) || w[i] < 0.0)
            throw InvalidArgument("weight " + std::to_string(i) + " is negative or non-finite");
        any = any || w[i] > 0.0;
    }
    if (!any) throw InvalidArgument("weight vector has no positive entry");
}

namespace detail {

GScalar power_sum(std::span<const GScalar> x, std::span<const double> w, double r,
                  double* magnitude) {
    GScalar s;
    double mag = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (w[i] == 0.0) continue;
        const GScalar t = GScalar(w[i]) * power(x[i], r);
        s += t;
        if (magnitude) mag += t.modulus();
    }
    if (magnitude) *magnitude = mag;
    return s;
}

void require_denominator(const GScalar& d, double magnitude) {
    const double mod = d.modulus();
    if (mod == 0.0 || mod < kZeroTolerance * magnitude) throw DegenerateDenominator(mod);
}

void maybe_warn_precision(std::span<const GScalar> x, double p) {
    if (std::fabs(p) < kCalculatedMaximum) return;
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& v : x) lo = std::min(lo, v.modulus());
    if (lo > 1e-3) return;
    std::ostringstream msg;
    msg << "exponent " << p << " with element of modulus " << lo
        << " may exceed 64-bit precision";
    std::lock_guard lock(g_warn_mutex);
    if (g_warn_handler) g_warn_handler(PrecisionWarning{p, lo, msg.str()});
}

}  // namespace detail

namespace {

void check_inputs(std::span<const GScalar> x, std::span<const double> w) {
    validate_elements(x);
    if (w.size() != x.size()) throw LengthMismatch(x.size(), w.size());
    validate_weights(w);
}

GScalar ratio(std::span<const GScalar> x, std::span<const double> w, double p, double q) {
    detail::maybe_warn_precision(x, std::fabs(p) >= std::fabs(p - q) ? p : p - q);
    const GScalar num = detail::power_sum(x, w, p);
    double mag = 0.0;
    const GScalar den = detail::power_sum(x, w, p - q, &mag);
    detail::require_denominator(den, mag);
    return num / den;
}

}  // namespace

GScalar lehmer_mean(std::span<const GScalar> x, std::span<const double> w, double p) {
    check_inputs(x, w);
    return ratio(x, w, p, 1.0);
}

GScalar lehmer_mean(std::span<const GScalar> x, double p) {
    const std::vector<double> ones(x.size(), 1.0);
    return lehmer_mean(x, ones, p);
}

GScalar gini_mean(std::span<const GScalar> x, std::span<const double> w, double p, double q,
                  bool rooted) {
    check_inputs(x, w);
    if (rooted && q == 0.0) throw RootDomain("rooted form requires q != 0");
    const GScalar r = ratio(x, w, p, q);
    if (!rooted) return r;
    if (r.is_real() && r.re() < 0.0) {
        const double inv = 1.0 / q;
        if (std::trunc(inv) != inv) throw RootDomain("negative real base has no real root");
    }
    return power(r, 1.0 / q);
}

GScalar gini_mean(std::span<const GScalar> x, double p, double q, bool rooted) {
    const std::vector<double> ones(x.size(), 1.0);
    return gini_mean(x, ones, p, q, rooted);
}

ElementVector complex_lift(std::span<const GScalar> x, double epsilon) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        throw InvalidArgument("lift epsilon must be positive");
    validate_elements(x);
    ElementVector out;
    out.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!x[i].is_real()) throw AlreadyComplex(i);
        out.emplace_back(x[i].re(), epsilon);
    }
    return out;
}

}  // namespace multiplet
