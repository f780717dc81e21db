#pragma once

#include <cstddef>
#include <cstdint>

namespace multiplet {

struct GradCheckConfig {
    std::size_t trials = 1000;
    std::uint64_t seed = 1;
    double h = 1e-4;          ///< finite-difference step (fourth-order stencil)
    double tolerance = 1e-6;  ///< relative error bound
};

/// Largest relative error seen per parameter class.
struct GradCheckReport {
    std::size_t trials = 0;
    std::size_t failures = 0;
    double max_w = 0.0, max_m = 0.0, max_b = 0.0, max_p = 0.0, max_q = 0.0, max_x = 0.0;
    bool ok() const noexcept { return failures == 0; }
};

/// |a - b| / max(|a|, |b|, floor).  The floor absorbs partials that are zero
/// up to rounding, where a ratio carries no information.
double relative_error(double a, double b, double floor);

/// Random single neurons: x in [0.1,1], p in [-4,8], q in [-2,4], L in {1,4}.
GradCheckReport check_neuron_gradients(const GradCheckConfig& cfg);

/// Random two-layer networks on x in [0.1,1]^4, including input gradients.
GradCheckReport check_network_gradients(const GradCheckConfig& cfg);

}  // namespace multiplet
