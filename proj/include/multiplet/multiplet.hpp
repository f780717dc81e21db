#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "multiplet/means.hpp"

namespace multiplet {

/// Per-neuron parameters.  Output is b + m * Σ w^L x^p / Σ w^L x^(p-q).
struct MultipletNeuron {
    double m = 1.0;
    double b = 0.0;
    double p = 1.0;
    double q = 1.0;

    friend bool operator==(const MultipletNeuron&, const MultipletNeuron&) = default;
};

/// Neurons sharing one input instance and one weight vector.
struct Multiplet {
    WeightVector w;
    double L = 1.0;
    std::vector<MultipletNeuron> neurons;

    std::size_t arity() const noexcept { return w.size(); }
    void validate() const;
    /// w_i^L
    WeightVector effective_weights() const;

    friend bool operator==(const Multiplet&, const Multiplet&) = default;
};

struct GradientBundle {
    std::vector<double> d_w;
    double d_m = 0.0;
    double d_b = 1.0;
    double d_p = 0.0;
    double d_q = 0.0;
};

/// Holomorphic partials of one neuron output; used for backprop through
/// complex-lifted networks.  d_p/d_q are filled only when requested.
struct NeuronPartials {
    GScalar value;
    GScalar ratio;  ///< N/D, also the partial w.r.t. m
    std::vector<GScalar> d_w;
    std::vector<GScalar> d_x;
    GScalar d_p;
    GScalar d_q;
};

GScalar forward(const MultipletNeuron& neuron, const Multiplet& mult, std::span<const GScalar> x);
std::vector<GScalar> forward_multiplet(const Multiplet& mult, std::span<const GScalar> x);

/// n + 4ψ, or n + 3ψ when q is pinned at 1.
std::size_t param_count(const Multiplet& mult, bool lehmer_only);

/// Real partials; x must be real and strictly positive.
GradientBundle gradients(const MultipletNeuron& neuron, const Multiplet& mult,
                         std::span<const GScalar> x);

NeuronPartials neuron_partials(const MultipletNeuron& neuron, const Multiplet& mult,
                               std::span<const GScalar> x, bool want_pq);

/// w'_i = w_i exp(-alpha (i-k)^2)
WeightVector attention_weights(std::span<const double> base, std::size_t k, double alpha);

struct GridShape {
    std::size_t height = 0;
    std::size_t width = 0;
};

/// Flat index i sits at (row i / width, col i % width);
/// w'_i = w_i exp(-alpha (row-j)^2) exp(-alpha (col-k)^2).
WeightVector attention_weights_2d(std::span<const double> base, GridShape shape, std::size_t j,
                                  std::size_t k, double alpha);

}  // namespace multiplet
