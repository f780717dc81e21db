#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "multiplet/gscalar.hpp"

namespace multiplet {

using ElementVector = std::vector<GScalar>;
using WeightVector = std::vector<double>;

/// Denominators with modulus below this are treated as zero.
inline constexpr double kZeroTolerance = 1e-30;
/// Finite stand-ins for the max/min limit cases.
inline constexpr double kCalculatedMaximum = 8.0;
inline constexpr double kCalculatedMinimum = -3.0;

/// Emitted when a large exponent meets a tiny element, where 64-bit floats
/// start losing the small terms.
struct PrecisionWarning {
    double p;
    double min_modulus;
    std::string message;
};

using WarningHandler = std::function<void(const PrecisionWarning&)>;

/// Installs a process-wide handler (default writes to stderr).  Returns the
/// previous handler.  Passing an empty function silences warnings.
WarningHandler set_warning_handler(WarningHandler handler);

/// Converts a real sequence into GScalars.
ElementVector to_elements(std::span<const double> values);

void validate_elements(std::span<const GScalar> x);
void validate_weights(std::span<const double> w);

GScalar lehmer_mean(std::span<const GScalar> x, std::span<const double> w, double p);
GScalar lehmer_mean(std::span<const GScalar> x, double p);

/// Σw x^p / Σw x^(p-q), raised to 1/q when `rooted`.
GScalar gini_mean(std::span<const GScalar> x, std::span<const double> w, double p, double q,
                  bool rooted);
GScalar gini_mean(std::span<const GScalar> x, double p, double q, bool rooted);

/// Adds `epsilon` as the imaginary part of every (pure real) element.
ElementVector complex_lift(std::span<const GScalar> x, double epsilon);

namespace detail {
/// Σ w_i x_i^r; optionally also Σ w_i |x_i^r|.
GScalar power_sum(std::span<const GScalar> x, std::span<const double> w, double r,
                  double* magnitude = nullptr);
/// Throws DegenerateDenominator when |d| < kZeroTolerance * magnitude, where magnitude is
/// the sum of the summands' moduli. Catches cancellation without rejecting sums that are
/// merely small, such as a lifted zero raised to a large power.
void require_denominator(const GScalar& d, double magnitude = 1.0);
void maybe_warn_precision(std::span<const GScalar> x, double p);
}  // namespace detail

}  // namespace multiplet
