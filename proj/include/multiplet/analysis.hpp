#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "multiplet/multiplet.hpp"
#include "multiplet/surface.hpp"

namespace multiplet {

struct Range {
    double lo = 0.0;
    double hi = 1.0;
};

/// (Σx^r Σx^(s-1)) / (Σx^s Σx^(r-1)); exactly 1 when r == s.
double codependence(std::span<const GScalar> x, double r, double s);

/// log|codependence| over (r, s).
SurfaceGrid codependence_surface(std::span<const GScalar> x, Range r, Range s,
                                 std::size_t resolution);

/// Un-rooted Gini value per (p, q) cell.
SurfaceGrid pq_surface(std::span<const GScalar> x, Range p, Range q, std::size_t resolution);

/// Cellwise pq_surface(test) / pq_surface(reference).
SurfaceGrid surface_ratio(std::span<const GScalar> test, std::span<const GScalar> reference,
                          Range p, Range q, std::size_t resolution);

struct NoiseReport {
    std::vector<double> etas;
    std::vector<double> deviations;  ///< |L_p(u + eta_alt) - L_p(u)|
    double slope = 0.0;              ///< log-log fit over nonzero deviations (NaN if < 2)
};

/// Alternating-sign additive noise eta, eta/10, ... (`steps` values).
NoiseReport noise_study(std::span<const GScalar> u, double eta, double p, std::size_t steps = 5);

/// Output of neuron `j` over a square input grid.
SurfaceGrid perceptron_surface(const Multiplet& mult, Range range, std::size_t resolution,
                               std::size_t j = 0);

/// True when the cells with value above (or below) `level` form a nonempty set
/// that does not touch the grid border.
bool region_enclosed(const SurfaceGrid& g, double level, bool above);

/// Seeded samples used by the distribution-ratio study.
std::vector<double> beta_sample(double a, double b, std::size_t n, std::uint64_t seed);
std::vector<double> normal_sample(double mean, double sd, std::size_t n, std::uint64_t seed,
                                  double lo = 0.01, double hi = 0.99);

}  // namespace multiplet
