#include "multiplet/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "multiplet/errors.hpp"

namespace multiplet {

namespace {

void require_positive(std::span<const GScalar> x) {
    validate_elements(x);
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!x[i].is_real() || !(x[i].re() > 0.0)) throw NonPositiveElement(i);
}

GScalar plain_sum(std::span<const GScalar> x, double r) {
    const std::vector<double> ones(x.size(), 1.0);
    return detail::power_sum(x, ones, r);
}

}  // namespace

double codependence(std::span<const GScalar> x, double r, double s) {
    require_positive(x);
    if (r == s) return 1.0;
    const GScalar num = plain_sum(x, r) * plain_sum(x, s - 1.0);
    const GScalar den = plain_sum(x, s) * plain_sum(x, r - 1.0);
    detail::require_denominator(den);
    return (num / den).re();
}

SurfaceGrid codependence_surface(std::span<const GScalar> x, Range r, Range s,
                                 std::size_t resolution) {
    require_positive(x);
    const ElementVector xs(x.begin(), x.end());
    return sample_surface({"r", linspace(r.lo, r.hi, resolution)},
                          {"s", linspace(s.lo, s.hi, resolution)},
                          [&](double a, double b) { return std::log(std::fabs(codependence(xs, a, b))); });
}

SurfaceGrid pq_surface(std::span<const GScalar> x, Range p, Range q, std::size_t resolution) {
    require_positive(x);
    const ElementVector xs(x.begin(), x.end());
    return sample_surface({"p", linspace(p.lo, p.hi, resolution)},
                          {"q", linspace(q.lo, q.hi, resolution)},
                          [&](double a, double b) { return gini_mean(xs, a, b, false).re(); });
}

SurfaceGrid surface_ratio(std::span<const GScalar> test, std::span<const GScalar> reference,
                          Range p, Range q, std::size_t resolution) {
    const SurfaceGrid t = pq_surface(test, p, q, resolution);
    const SurfaceGrid r = pq_surface(reference, p, q, resolution);
    SurfaceGrid out = t;
    for (std::size_t c = 0; c < out.values.size(); ++c) {
        if (t.degenerate[c] || r.degenerate[c] || std::fabs(r.values[c]) < kZeroTolerance) {
            out.values[c] = 0.0;
            out.degenerate[c] = 1;
            out.denominator_modulus[c] = r.degenerate[c] ? r.denominator_modulus[c] : std::fabs(r.values[c]);
            continue;
        }
        out.values[c] = t.values[c] / r.values[c];
    }
    return out;
}

NoiseReport noise_study(std::span<const GScalar> u, double eta, double p, std::size_t steps) {
    require_positive(u);
    if (steps == 0) throw InvalidArgument("noise study needs at least one step");
    double lo = u[0].re();
    for (const auto& v : u) lo = std::min(lo, v.re());
    if (!(std::fabs(eta) < lo)) throw InvalidArgument("noise magnitude must be below min(u)");

    NoiseReport rep;
    const GScalar base = lehmer_mean(u, p);
    double e = eta;
    for (std::size_t k = 0; k < steps; ++k, e /= 10.0) {
        ElementVector x(u.begin(), u.end());
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += GScalar(i % 2 == 0 ? e : -e);
        rep.etas.push_back(e);
        rep.deviations.push_back((lehmer_mean(x, p) - base).modulus());
    }
    std::vector<double> lx, ly;
    for (std::size_t k = 0; k < steps; ++k) {
        if (rep.deviations[k] > 0.0 && rep.etas[k] > 0.0) {
            lx.push_back(std::log(rep.etas[k]));
            ly.push_back(std::log(rep.deviations[k]));
        }
    }
    if (lx.size() < 2) {
        rep.slope = std::nan("");
        return rep;
    }
    const double n = static_cast<double>(lx.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    rep.slope = sxy / sxx;
    return rep;
}

SurfaceGrid perceptron_surface(const Multiplet& mult, Range range, std::size_t resolution,
                               std::size_t j) {
    mult.validate();
    if (mult.arity() != 2) throw LengthMismatch(2, mult.arity());
    if (j >= mult.neurons.size()) throw IndexOutOfRange(j, mult.neurons.size());
    return sample_surface({"x1", linspace(range.lo, range.hi, resolution)},
                          {"x2", linspace(range.lo, range.hi, resolution)},
                          [&](double a, double b) {
                              const GScalar x[2] = {GScalar(a), GScalar(b)};
                              return forward(mult.neurons[j], mult, x).re();
                          });
}

bool region_enclosed(const SurfaceGrid& g, double level, bool above) {
    bool any = false;
    for (std::size_t i = 0; i < g.rows(); ++i) {
        for (std::size_t j = 0; j < g.cols(); ++j) {
            if (g.is_degenerate(i, j)) continue;
            const double v = g.at(i, j);
            if (above ? v > level : v < level) {
                any = true;
                if (i == 0 || j == 0 || i + 1 == g.rows() || j + 1 == g.cols()) return false;
            }
        }
    }
    return any;
}

std::vector<double> beta_sample(double a, double b, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::gamma_distribution<double> ga(a, 1.0), gb(b, 1.0);
    std::vector<double> out(n);
    for (auto& v : out) {
        const double x = ga(rng), y = gb(rng);
        v = std::clamp(x / (x + y), 1e-6, 1.0 - 1e-6);
    }
    return out;
}

std::vector<double> normal_sample(double mean, double sd, std::size_t n, std::uint64_t seed,
                                  double lo, double hi) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> d(mean, sd);
    std::vector<double> out(n);
    for (auto& v : out) v = std::clamp(d(rng), lo, hi);
    return out;
}

}  // namespace multiplet
