#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "multiplet/network.hpp"

namespace multiplet {

struct SeriesTerm {
    double exponent = 0.0;
    double coefficient = 0.0;
};

/// Σ a_k (x - c)^{e_k}; exponents must be distinct.
struct SeriesSpec {
    std::vector<SeriesTerm> terms;
    double center = 0.0;
    void validate() const;
};

/// Direct evaluation of a series, no network involved.
double evaluate_series(const SeriesSpec& spec, double x);

/// Two layers: one neuron per term (p = q = exponent, m = coefficient) reading
/// input `index` through a one-hot weight, then a summing neuron (p = q = 1,
/// m = number of terms).  A nonzero center adds a leading shift layer.
NetworkGraph build_power_series(const SeriesSpec& spec, std::size_t input_arity = 1,
                                std::size_t index = 0);

/// One multiplet over all inputs sharing `w`; output Σ w_i PS(x_i) / Σ w_i.
NetworkGraph build_multi_element_series(const SeriesSpec& spec, std::span<const double> w);

/// Unweighted Σx^p / Σx^(p-q) with q = n, p = n/2 unless overridden.
GScalar approx_product(std::span<const GScalar> x, std::optional<double> q = std::nullopt,
                       std::optional<double> p = std::nullopt);

/// log2(n) layers of (p=1, q=2) pair neurons.  `pairing` permutes the inputs
/// before the first layer (default: adjacent pairs).
NetworkGraph build_product_tree(std::size_t n,
                                std::optional<std::vector<std::size_t>> pairing = std::nullopt);

/// Inputs (a, b), output a / b.
NetworkGraph build_division();

struct PadeCoefficients {
    double a0 = 1.0, a1 = 0.0, a2 = 0.0;
    double b1 = 0.0, b2 = 0.0;
};

/// (a0 + a1 x + a2 x^2) / (1 + b1 x + b2 x^2) in four layers.  The denominator
/// is sampled at 1000 points of [lo, hi] and must stay positive.
NetworkGraph build_pade_22(const PadeCoefficients& c, double lo = 0.0, double hi = 1.0);

double evaluate_pade_22(const PadeCoefficients& c, double x);

enum class SoftplusVariant { PowerSeries, LaurentCombo };

/// Truncated composed series for ln(1 + e^x), usable up to about x = 0.3.
SeriesSpec softplus_power_series();
/// Either variant as a network.
NetworkGraph softplus_series(SoftplusVariant variant);
/// 1/2 + u/4 + 1/(4u) - 1/(2u^2), u = 1 + x + x^2/2.
double softplus_laurent_value(double x);

/// exp, ln1p, geometric (Σ a r^k x^k, k < order), triangular_diff,
/// ln1p_at_infinity (negative-power part only), inverse (1/(z-1)).
SeriesSpec build_named_series(const std::string& name, std::size_t order, double a = 1.0,
                              double r = 0.5);

}  // namespace multiplet
