#pragma once

#include <optional>
#include <span>

#include "multiplet/means.hpp"
#include "multiplet/surface.hpp"

namespace multiplet {

struct LogicConfig {
    double T = 1.0;          ///< truth constant
    double p_or = 7.0;       ///< disjunction exponent
    double p_and = -3.0;     ///< conjunction exponent
    double epsilon = 1e-6;   ///< complex-lift magnitude
    void validate() const;
};

GScalar neg(const GScalar& x, const LogicConfig& cfg);
GScalar conj(std::span<const GScalar> x, const LogicConfig& cfg);
GScalar conj(std::span<const GScalar> x, std::span<const double> w, const LogicConfig& cfg);
GScalar disj(std::span<const GScalar> x, const LogicConfig& cfg);
GScalar disj(std::span<const GScalar> x, std::span<const double> w, const LogicConfig& cfg);

/// Both layers of the XOR duet-singlet.
struct DuetSinglet {
    GScalar sigma1;  ///< disj(x)
    GScalar sigma2;  ///< T - conj(x)
    GScalar chi;     ///< conj(sigma1, sigma2)
};

DuetSinglet xor_duet_singlet(std::span<const GScalar> x, const LogicConfig& cfg);
DuetSinglet xor_duet_singlet(std::span<const GScalar> x, std::span<const double> w,
                             const LogicConfig& cfg);

/// not(P and not Q) with P = disj(x), Q = conj(x), evaluated as (not P) or Q.
GScalar xnor_i(std::span<const GScalar> x, const LogicConfig& cfg);
/// conj(x) or conj(not x), every element pooled.
GScalar xnor_ii(std::span<const GScalar> x, const LogicConfig& cfg);

/// (eps or X) and (eps or not X); eps is prepended after complementing.
GScalar interval_estimate(std::span<const GScalar> x, double eps, const LogicConfig& cfg);

struct SurfaceSpec {
    std::size_t resolution = 51;
    double lo = 0.0;
    double hi = 1.0;
};

struct ThirdElement {
    double x3 = 0.0;
    double w3 = 1.0;
};

/// chi over [lo,hi]^2 on lifted inputs.  With `third`, the value is
/// chi(x1,x2,x3; w=(1,1,w3)) - chi(x1,x2).
SurfaceGrid xor_surface(const SurfaceSpec& grid, const LogicConfig& cfg,
                        std::optional<ThirdElement> third = std::nullopt);

}  // namespace multiplet
