#include "multiplet/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "multiplet/errors.hpp"
#include "multiplet/network.hpp"

namespace multiplet {

namespace {

constexpr double kFloor = 1e-8;

// Reference evaluation in extended precision, written without the library's
// power-sum caching so that the finite differences do not share its code path.
using Real = long double;

Real ref_neuron(const Multiplet& mult, const MultipletNeuron& nr, const std::vector<Real>& x) {
    Real num = 0.0L, den = 0.0L;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const Real wl = std::pow(static_cast<Real>(mult.w[i]), static_cast<Real>(mult.L));
        num += wl * std::pow(x[i], static_cast<Real>(nr.p));
        den += wl * std::pow(x[i], static_cast<Real>(nr.p) - static_cast<Real>(nr.q));
    }
    return static_cast<Real>(nr.b) + static_cast<Real>(nr.m) * num / den;
}

Real ref_network(const NetworkGraph& net, const std::vector<Real>& x) {
    std::vector<Real> cur = x;
    for (const Layer& layer : net.layers) {
        std::vector<Real> next;
        for (const Node& node : layer) {
            std::vector<Real> in;
            for (std::size_t i : node.inputs) in.push_back(cur[i]);
            for (const auto& nr : node.multiplet.neurons)
                next.push_back(ref_neuron(node.multiplet, nr, in));
        }
        cur = std::move(next);
    }
    return cur[0];
}

std::vector<Real> widen(const ElementVector& x) {
    std::vector<Real> out;
    for (const auto& v : x) out.push_back(v.re());
    return out;
}

// Fourth-order central stencil.
double fd(const std::function<Real(Real)>& f, double at, double h) {
    const Real a = at, hh = h;
    const Real d = (-f(a + 2 * hh) + 8 * f(a + hh) - 8 * f(a - hh) + f(a - 2 * hh)) / (12 * hh);
    return static_cast<double>(d);
}

struct Tracker {
    GradCheckReport& rep;
    double tol;
    bool failed = false;
    void add(double& slot, double analytic, double numeric) {
        const double e = relative_error(analytic, numeric, kFloor);
        slot = std::max(slot, e);
        if (!(e <= tol)) failed = true;
    }
};

}  // namespace

double relative_error(double a, double b, double floor) {
    const double scale = std::max({std::fabs(a), std::fabs(b), floor});
    return std::fabs(a - b) / scale;
}

GradCheckReport check_neuron_gradients(const GradCheckConfig& cfg) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> ux(0.1, 1.0), up(-4.0, 8.0), uq(-2.0, 4.0),
        uw(0.1, 1.0), um(-2.0, 2.0), ub(-1.0, 1.0);
    std::uniform_int_distribution<int> un(2, 6), ul(0, 1);
    GradCheckReport rep;
    rep.trials = cfg.trials;
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        const int n = un(rng);
        Multiplet mult;
        mult.L = ul(rng) ? 4.0 : 1.0;
        ElementVector x;
        for (int i = 0; i < n; ++i) {
            mult.w.push_back(uw(rng));
            x.emplace_back(ux(rng));
        }
        MultipletNeuron nr{um(rng), ub(rng), up(rng), uq(rng)};
        mult.neurons = {nr};
        const GradientBundle g = gradients(nr, mult, x);
        const NeuronPartials np = neuron_partials(nr, mult, x, false);
        const std::vector<Real> xr = widen(x);
        Tracker tr{rep, cfg.tolerance};

        for (int k = 0; k < n; ++k) {
            tr.add(rep.max_w, g.d_w[k], fd([&](Real v) {
                       Multiplet m2 = mult;
                       m2.w[k] = static_cast<double>(v);
                       return ref_neuron(m2, nr, xr);
                   }, mult.w[k], cfg.h));
            tr.add(rep.max_x, np.d_x[k].re(), fd([&](Real v) {
                       std::vector<Real> x2 = xr;
                       x2[k] = v;
                       return ref_neuron(mult, nr, x2);
                   }, x[k].re(), cfg.h));
        }
        auto by = [&](double MultipletNeuron::*field) {
            return [&, field](double v) {
                MultipletNeuron n2 = nr;
                n2.*field = static_cast<double>(v);
                return ref_neuron(mult, n2, xr);
            };
        };
        tr.add(rep.max_m, g.d_m, fd(by(&MultipletNeuron::m), nr.m, cfg.h));
        tr.add(rep.max_b, g.d_b, fd(by(&MultipletNeuron::b), nr.b, cfg.h));
        tr.add(rep.max_p, g.d_p, fd(by(&MultipletNeuron::p), nr.p, cfg.h));
        tr.add(rep.max_q, g.d_q, fd(by(&MultipletNeuron::q), nr.q, cfg.h));
        if (tr.failed) ++rep.failures;
    }
    return rep;
}

GradCheckReport check_network_gradients(const GradCheckConfig& cfg) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> ux(0.1, 1.0), up(-2.0, 4.0), uq(-1.0, 3.0),
        uw(0.2, 1.0), um(0.5, 1.5), ub(-0.5, 0.5);
    GradCheckReport rep;
    rep.trials = cfg.trials;
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        NetworkGraph net;
        net.input_arity = 4;
        Node a, b;
        a.inputs = {0, 1, 2};
        b.inputs = {1, 2, 3};
        for (Node* node : {&a, &b}) {
            node->multiplet.w = {uw(rng), uw(rng), uw(rng)};
            for (int j = 0; j < 2; ++j)
                node->multiplet.neurons.push_back({um(rng), std::fabs(ub(rng)) + 0.5, up(rng), uq(rng)});
        }
        Node out;
        out.inputs = {0, 1, 2, 3};
        out.multiplet.w = {uw(rng), uw(rng), uw(rng), uw(rng)};
        out.multiplet.neurons = {{um(rng), ub(rng), up(rng), uq(rng)}};
        net.layers = {{a, b}, {out}};
        ElementVector x;
        for (int i = 0; i < 4; ++i) x.emplace_back(ux(rng));

        // Positive layer-1 outputs are required for the p/q partials downstream.
        bool positive = true;
        ForwardTrace trace;
        try {
            forward_network(net, x, &trace);
        } catch (const Error&) {
            positive = false;
        }
        if (positive)
            for (const auto& v : trace.activations[1]) positive = positive && v.re() > 0.0;
        if (!positive) {
            --t;
            continue;
        }

        const double lg[1] = {1.0};
        const NetworkGradient g = backward_network(net, x, lg, {true, true});
        const std::vector<Real> xr = widen(x);
        auto loss = [&](const NetworkGraph& n2, const std::vector<Real>& x2) {
            return ref_network(n2, x2);
        };
        Tracker tr{rep, cfg.tolerance};
        for (std::size_t l = 0; l < net.layers.size(); ++l) {
            for (std::size_t k = 0; k < net.layers[l].size(); ++k) {
                const Multiplet& m = net.layers[l][k].multiplet;
                const MultipletGradient& mg = g.layers[l][k];
                for (std::size_t i = 0; i < m.w.size(); ++i)
                    tr.add(rep.max_w, mg.d_w[i], fd([&](Real v) {
                               NetworkGraph n2 = net;
                               n2.layers[l][k].multiplet.w[i] = static_cast<double>(v);
                               return loss(n2, xr);
                           }, m.w[i], cfg.h));
                for (std::size_t j = 0; j < m.neurons.size(); ++j) {
                    auto by = [&](double MultipletNeuron::*field) {
                        return [&, field](double v) {
                            NetworkGraph n2 = net;
                            n2.layers[l][k].multiplet.neurons[j].*field = static_cast<double>(v);
                            return loss(n2, xr);
                        };
                    };
                    const MultipletNeuron& nr = m.neurons[j];
                    tr.add(rep.max_m, mg.neurons[j].d_m, fd(by(&MultipletNeuron::m), nr.m, cfg.h));
                    tr.add(rep.max_b, mg.neurons[j].d_b, fd(by(&MultipletNeuron::b), nr.b, cfg.h));
                    tr.add(rep.max_p, mg.neurons[j].d_p, fd(by(&MultipletNeuron::p), nr.p, cfg.h));
                    tr.add(rep.max_q, mg.neurons[j].d_q, fd(by(&MultipletNeuron::q), nr.q, cfg.h));
                }
            }
        }
        for (std::size_t i = 0; i < x.size(); ++i)
            tr.add(rep.max_x, g.d_input[i], fd([&](Real v) {
                       std::vector<Real> x2 = xr;
                       x2[i] = v;
                       return loss(net, x2);
                   }, x[i].re(), cfg.h));
        if (tr.failed) ++rep.failures;
    }
    return rep;
}

}  // namespace multiplet
