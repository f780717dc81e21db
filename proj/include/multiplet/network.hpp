#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "multiplet/multiplet.hpp"

namespace multiplet {

/// A multiplet plus the indices it reads from the previous layer's outputs
/// (or from the network input for layer 0).
struct Node {
    std::vector<std::size_t> inputs;
    Multiplet multiplet;

    friend bool operator==(const Node&, const Node&) = default;
};

using Layer = std::vector<Node>;

/// Feed-forward layered wiring.  A layer's output vector is the concatenation
/// of its nodes' neuron outputs in node order.
struct NetworkGraph {
    std::size_t input_arity = 0;
    std::vector<Layer> layers;

    void validate() const;
    std::size_t layer_width(std::size_t l) const;
    std::size_t output_size() const;
    std::size_t param_count(bool lehmer_only = false) const;

    friend bool operator==(const NetworkGraph&, const NetworkGraph&) = default;
};

/// activations[0] is the input; activations[l + 1] is layer l's output.
struct ForwardTrace {
    std::vector<ElementVector> activations;
};

ElementVector forward_network(const NetworkGraph& net, std::span<const GScalar> x,
                              ForwardTrace* trace = nullptr);

struct NeuronGradient {
    double d_m = 0.0;
    double d_b = 0.0;
    double d_p = 0.0;
    double d_q = 0.0;
};

struct MultipletGradient {
    std::vector<double> d_w;
    std::vector<NeuronGradient> neurons;
};

struct NetworkGradient {
    std::vector<std::vector<MultipletGradient>> layers;
    std::vector<double> d_input;

    static NetworkGradient zeros_like(const NetworkGraph& net);
    NetworkGradient& operator+=(const NetworkGradient& o);
};

struct GradientRequest {
    bool p = false;
    bool q = false;
};

/// Gradients of a real loss whose derivative w.r.t. Re(output_k) is
/// loss_grad[k].  Complex activations propagate holomorphic partials; the
/// real part is taken at each parameter.
NetworkGradient backward_network(const NetworkGraph& net, std::span<const GScalar> x,
                                 std::span<const double> loss_grad, GradientRequest req = {});

/// Gap between the high (p=6) and low (p=-3) weighted Lehmer means.
/// squashed: tanh(|gap|); otherwise |gap| / 9.  A constant vector gives 0.
double case_slope_score(std::span<const GScalar> z, std::span<const double> w, bool squashed = true);

// Constraint hooks, applied after every update.

enum class Parity { Even, Odd };

/// Snaps q of one neuron to the nearest even or odd integer.
struct ParityConstraint {
    std::size_t layer = 0, node = 0, neuron = 0;
    Parity parity = Parity::Even;
};

/// Raises every weight below `floor` to it.
struct WeightFloor {
    double floor = 1e-6;
};

/// m of each listed neuron is held at factor * (shared base), where the base is
/// taken from the first listed neuron (m_first / factor_first).
struct CoefficientTie {
    std::size_t layer = 0, node = 0;
    std::vector<std::pair<std::size_t, double>> members;
};

/// Weights where keep[i] is false are forced to zero.
struct SparsityMask {
    std::size_t layer = 0, node = 0;
    std::vector<bool> keep;
};

using ConstraintHook = std::variant<ParityConstraint, WeightFloor, CoefficientTie, SparsityMask>;

void apply_constraints(NetworkGraph& net, std::span<const ConstraintHook> hooks);

/// Per-class learning-rate multipliers.
struct ClassRates {
    double w = 1.0;
    double m = 1.0;
    double b = 1.0;
    double p = 0.0;
    double q = 0.0;
};

struct TrainConfig {
    double lambda = 0.05;
    std::size_t epochs = 100;
    std::size_t batch_size = 0;  ///< 0 = full batch
    bool shuffle = true;
    bool css_modulation = false;
    bool css_accumulate = false;  ///< use an EMA of nu instead of the instant value
    double css_decay = 0.9;
    bool css_squashed = true;
    ClassRates rates;
    std::uint64_t seed = 42;
    std::vector<ConstraintHook> constraints;

    void validate() const;
};

struct Sample {
    ElementVector x;
    std::vector<double> y;
};

struct StepReport {
    double loss = 0.0;     ///< batch MSE before the update
    double mean_nu = 0.0;  ///< mean over samples and multiplets
};

/// Mutable state carried across steps (EMA of nu, shuffle RNG).
struct TrainState {
    std::vector<std::vector<double>> nu_ema;
    std::vector<std::vector<bool>> nu_seen;
    std::mt19937_64 rng;
};

StepReport modulated_step(NetworkGraph& net, std::span<const Sample> batch, const TrainConfig& cfg,
                          TrainState* state = nullptr);

struct EpochRecord {
    std::size_t epoch = 0;
    double loss = 0.0;
    double mean_nu = 0.0;
};

using TrainHistory = std::vector<EpochRecord>;

TrainHistory train(NetworkGraph& net, std::span<const Sample> data, const TrainConfig& cfg);

void write_history_csv(const TrainHistory& h, std::ostream& os);

/// w ~ U[0.5,1.5]/n, m ~ U[-1,1], b = 0; p and q are kept.
void initialize_parameters(NetworkGraph& net, std::uint64_t seed);

double mean_squared_error(const NetworkGraph& net, std::span<const Sample> data);

}  // namespace multiplet
