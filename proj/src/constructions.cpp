#include "multiplet/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "multiplet/errors.hpp"

namespace multiplet {

namespace {

Node single(std::vector<std::size_t> inputs, std::vector<double> w, MultipletNeuron n) {
    Node node;
    node.inputs = std::move(inputs);
    node.multiplet.w = std::move(w);
    node.multiplet.neurons = {n};
    return node;
}

MultipletNeuron neuron(double p, double q, double m = 1.0, double b = 0.0) {
    return MultipletNeuron{m, b, p, q};
}

Node summing_node(std::size_t count, std::size_t offset = 0) {
    std::vector<std::size_t> idx(count);
    std::iota(idx.begin(), idx.end(), offset);
    return single(std::move(idx), std::vector<double>(count, 1.0),
                  neuron(1.0, 1.0, static_cast<double>(count)));
}

}  // namespace

void SeriesSpec::validate() const {
    if (terms.empty()) throw InvalidArgument("series needs at least one term");
    std::set<double> seen;
    for (const auto& t : terms) {
        if (!std::isfinite(t.exponent) || !std::isfinite(t.coefficient))
            throw InvalidArgument("series terms must be finite");
        if (!seen.insert(t.exponent).second)
            throw InvalidArgument("series exponents must be distinct");
    }
    if (!std::isfinite(center)) throw InvalidArgument("series center must be finite");
}

double evaluate_series(const SeriesSpec& spec, double x) {
    spec.validate();
    const GScalar u(x - spec.center);
    GScalar s;
    for (const auto& t : spec.terms) s += GScalar(t.coefficient) * power(u, t.exponent);
    return s.re();
}

NetworkGraph build_power_series(const SeriesSpec& spec, std::size_t input_arity,
                                std::size_t index) {
    spec.validate();
    if (index >= input_arity) throw IndexOutOfRange(index, input_arity);
    NetworkGraph g;
    g.input_arity = input_arity;

    std::vector<std::size_t> term_inputs(input_arity);
    std::iota(term_inputs.begin(), term_inputs.end(), 0);
    std::vector<double> onehot(input_arity, 0.0);
    onehot[index] = 1.0;
    if (spec.center != 0.0) {
        // x - c as a pass-through neuron with offset
        g.layers.push_back({single({index}, {1.0}, neuron(1.0, 1.0, 1.0, -spec.center))});
        term_inputs = {0};
        onehot = {1.0};
    }

    Node terms;
    terms.inputs = term_inputs;
    terms.multiplet.w = onehot;
    for (const auto& t : spec.terms)
        terms.multiplet.neurons.push_back(neuron(t.exponent, t.exponent, t.coefficient));
    g.layers.push_back({terms});
    g.layers.push_back({summing_node(spec.terms.size())});
    g.validate();
    return g;
}

NetworkGraph build_multi_element_series(const SeriesSpec& spec, std::span<const double> w) {
    spec.validate();
    if (spec.center != 0.0) throw InvalidArgument("multi-element series requires center 0");
    validate_weights(w);
    NetworkGraph g;
    g.input_arity = w.size();
    Node terms;
    terms.inputs.resize(w.size());
    std::iota(terms.inputs.begin(), terms.inputs.end(), 0);
    terms.multiplet.w.assign(w.begin(), w.end());
    for (const auto& t : spec.terms)
        terms.multiplet.neurons.push_back(neuron(t.exponent, t.exponent, t.coefficient));
    g.layers.push_back({terms});
    g.layers.push_back({summing_node(spec.terms.size())});
    g.validate();
    return g;
}

GScalar approx_product(std::span<const GScalar> x, std::optional<double> q,
                       std::optional<double> p) {
    validate_elements(x);
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!x[i].is_real() || !(x[i].re() > 0.0)) throw NonPositiveElement(i);
    const double qq = q.value_or(static_cast<double>(x.size()));
    const double pp = p.value_or(qq / 2.0);
    return gini_mean(x, pp, qq, false);
}

NetworkGraph build_product_tree(std::size_t n, std::optional<std::vector<std::size_t>> pairing) {
    if (n < 2 || (n & (n - 1)) != 0) throw InvalidArgument("product tree size must be a power of two >= 2");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    if (pairing) {
        std::vector<std::size_t> sorted = *pairing;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != order) throw InvalidArgument("pairing must be a permutation of 0..n-1");
        order = *pairing;
    }
    NetworkGraph g;
    g.input_arity = n;
    std::size_t width = n;
    bool first = true;
    while (width > 1) {
        Layer layer;
        for (std::size_t i = 0; i < width; i += 2) {
            const std::size_t a = first ? order[i] : i;
            const std::size_t b = first ? order[i + 1] : i + 1;
            layer.push_back(single({a, b}, {1.0, 1.0}, neuron(1.0, 2.0)));
        }
        g.layers.push_back(std::move(layer));
        width /= 2;
        first = false;
    }
    g.validate();
    return g;
}

NetworkGraph build_division() {
    NetworkGraph g;
    g.input_arity = 2;
    g.layers.push_back({
        single({0}, {1.0}, neuron(2.0, 2.0)),               // a^2
        single({0, 1}, {1.0, 1.0}, neuron(-1.0, -2.0)),     // 1/(ab)
    });
    g.layers.push_back({single({0, 1}, {1.0, 1.0}, neuron(1.0, 2.0))});
    g.validate();
    return g;
}

double evaluate_pade_22(const PadeCoefficients& c, double x) {
    return (c.a0 + c.a1 * x + c.a2 * x * x) / (1.0 + c.b1 * x + c.b2 * x * x);
}

NetworkGraph build_pade_22(const PadeCoefficients& c, double lo, double hi) {
    if (!(hi >= lo)) throw InvalidArgument("pade interval must satisfy lo <= hi");
    constexpr int kSamples = 1000;
    for (int i = 0; i < kSamples; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / (kSamples - 1);
        if (!(1.0 + c.b1 * x + c.b2 * x * x > 0.0)) throw DenominatorSignChange(x);
    }
    NetworkGraph g;
    g.input_arity = 1;
    Node terms;
    terms.inputs = {0};
    terms.multiplet.w = {1.0};
    terms.multiplet.neurons = {neuron(0, 0, c.a0), neuron(1, 1, c.a1), neuron(2, 2, c.a2),
                               neuron(0, 0, 1.0),  neuron(1, 1, c.b1), neuron(2, 2, c.b2)};
    g.layers.push_back({terms});
    g.layers.push_back({summing_node(3, 0), summing_node(3, 3)});  // P, Q
    g.layers.push_back({
        single({0}, {1.0}, neuron(1.0, 2.0)),            // P^2
        single({0, 1}, {1.0, 1.0}, neuron(-1.0, -2.0)),  // 1/(PQ)
    });
    g.layers.push_back({single({0, 1}, {1.0, 1.0}, neuron(1.0, 2.0))});
    g.validate();
    return g;
}

SeriesSpec softplus_power_series() {
    const double a[] = {5.0 / 6.0, 1.0, 1.0, 1.0, 19.0 / 24.0,
                        0.5,       2.0 / 9.0, 5.0 / 72.0, 1.0 / 72.0, 1.0 / 648.0};
    SeriesSpec s;
    for (int k = 0; k < 10; ++k) s.terms.push_back({static_cast<double>(k), a[k]});
    return s;
}

double softplus_laurent_value(double x) {
    const double u = 1.0 + x + x * x / 2.0;
    return 0.5 + u / 4.0 + 1.0 / (4.0 * u) - 1.0 / (2.0 * u * u);
}

NetworkGraph softplus_series(SoftplusVariant variant) {
    if (variant == SoftplusVariant::PowerSeries) return build_power_series(softplus_power_series());
    NetworkGraph g;
    g.input_arity = 1;
    Node terms;
    terms.inputs = {0};
    terms.multiplet.w = {1.0};
    terms.multiplet.neurons = {neuron(0, 0, 1.0), neuron(1, 1, 1.0), neuron(2, 2, 0.5)};
    g.layers.push_back({terms});
    g.layers.push_back({summing_node(3)});  // u
    Node outer;
    outer.inputs = {0};
    outer.multiplet.w = {1.0};
    outer.multiplet.neurons = {neuron(0, 0, 0.5), neuron(1, 1, 0.25), neuron(-1, -1, 0.25),
                               neuron(-2, -2, -0.5)};
    g.layers.push_back({outer});
    g.layers.push_back({summing_node(4)});
    g.validate();
    return g;
}

SeriesSpec build_named_series(const std::string& name, std::size_t order, double a, double r) {
    if (order < 1) throw InvalidArgument("series order must be >= 1");
    SeriesSpec s;
    const auto K = static_cast<int>(order);
    if (name == "exp") {
        double f = 1.0;
        for (int k = 0; k <= K; ++k) {
            if (k > 0) f *= k;
            s.terms.push_back({static_cast<double>(k), 1.0 / f});
        }
    } else if (name == "ln1p") {
        s.terms.push_back({0.0, 0.0});
        for (int k = 1; k <= K; ++k)
            s.terms.push_back({static_cast<double>(k), (k % 2 ? 1.0 : -1.0) / k});
    } else if (name == "geometric") {
        double c = a;
        for (int k = 0; k < K; ++k) {
            s.terms.push_back({static_cast<double>(k), c});
            c *= r;
        }
    } else if (name == "triangular_diff") {
        // binomial(1/2, k) z^(1-2k)
        double c = 1.0;
        for (int k = 1; k <= K; ++k) {
            c *= (0.5 - (k - 1)) / k;
            s.terms.push_back({1.0 - 2.0 * k, c});
        }
    } else if (name == "ln1p_at_infinity") {
        for (int k = 1; k <= K; ++k)
            s.terms.push_back({-static_cast<double>(k), (k % 2 ? 1.0 : -1.0) / k});
    } else if (name == "inverse") {
        for (int k = 1; k <= K; ++k) s.terms.push_back({-static_cast<double>(k), 1.0});
    } else {
        throw UnknownName(name);
    }
    return s;
}

}  // namespace multiplet
