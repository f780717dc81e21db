#include "multiplet/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "multiplet/errors.hpp"
#include "multiplet/parallel.hpp"
#include "multiplet/surface.hpp"

namespace multiplet {

namespace {

constexpr double kWeightClamp = 1e-6;

ElementVector gather(const ElementVector& src, const std::vector<std::size_t>& idx) {
    ElementVector out;
    out.reserve(idx.size());
    for (std::size_t i : idx) out.push_back(src[i]);
    return out;
}

template <class F>
void with_coordinates(std::size_t l, std::size_t k, F&& f) {
    try {
        f();
    } catch (Error& e) {
        e.set_layer(l);
        e.set_multiplet(k);
        throw;
    }
}

}  // namespace

void NetworkGraph::validate() const {
    if (input_arity == 0) throw InvalidArgument("network input arity must be positive");
    if (layers.empty()) throw InvalidArgument("network needs at least one layer");
    std::size_t prev = input_arity;
    for (std::size_t l = 0; l < layers.size(); ++l) {
        if (layers[l].empty()) throw InvalidArgument("layer " + std::to_string(l) + " is empty");
        for (std::size_t k = 0; k < layers[l].size(); ++k) {
            with_coordinates(l, k, [&] {
                const Node& node = layers[l][k];
                node.multiplet.validate();
                if (node.inputs.size() != node.multiplet.arity())
                    throw LengthMismatch(node.multiplet.arity(), node.inputs.size());
                for (std::size_t i : node.inputs)
                    if (i >= prev) throw IndexOutOfRange(i, prev);
            });
        }
        prev = layer_width(l);
    }
}

std::size_t NetworkGraph::layer_width(std::size_t l) const {
    std::size_t n = 0;
    for (const auto& node : layers.at(l)) n += node.multiplet.neurons.size();
    return n;
}

std::size_t NetworkGraph::output_size() const {
    return layers.empty() ? 0 : layer_width(layers.size() - 1);
}

std::size_t NetworkGraph::param_count(bool lehmer_only) const {
    std::size_t n = 0;
    for (const auto& layer : layers)
        for (const auto& node : layer) n += multiplet::param_count(node.multiplet, lehmer_only);
    return n;
}

ElementVector forward_network(const NetworkGraph& net, std::span<const GScalar> x,
                              ForwardTrace* trace) {
    if (x.size() != net.input_arity) throw LengthMismatch(net.input_arity, x.size());
    ElementVector cur(x.begin(), x.end());
    if (trace) {
        trace->activations.clear();
        trace->activations.push_back(cur);
    }
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        ElementVector next;
        next.reserve(net.layer_width(l));
        for (std::size_t k = 0; k < net.layers[l].size(); ++k) {
            const Node& node = net.layers[l][k];
            with_coordinates(l, k, [&] {
                for (std::size_t i : node.inputs)
                    if (i >= cur.size()) throw IndexOutOfRange(i, cur.size());
                const ElementVector in = gather(cur, node.inputs);
                for (const auto& v : forward_multiplet(node.multiplet, in)) next.push_back(v);
            });
        }
        cur = std::move(next);
        if (trace) trace->activations.push_back(cur);
    }
    return cur;
}

NetworkGradient NetworkGradient::zeros_like(const NetworkGraph& net) {
    NetworkGradient g;
    g.d_input.assign(net.input_arity, 0.0);
    g.layers.resize(net.layers.size());
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        for (const auto& node : net.layers[l]) {
            MultipletGradient mg;
            mg.d_w.assign(node.multiplet.arity(), 0.0);
            mg.neurons.assign(node.multiplet.neurons.size(), NeuronGradient{});
            g.layers[l].push_back(std::move(mg));
        }
    }
    return g;
}

NetworkGradient& NetworkGradient::operator+=(const NetworkGradient& o) {
    for (std::size_t i = 0; i < d_input.size(); ++i) d_input[i] += o.d_input[i];
    for (std::size_t l = 0; l < layers.size(); ++l) {
        for (std::size_t k = 0; k < layers[l].size(); ++k) {
            auto& a = layers[l][k];
            const auto& b = o.layers[l][k];
            for (std::size_t i = 0; i < a.d_w.size(); ++i) a.d_w[i] += b.d_w[i];
            for (std::size_t j = 0; j < a.neurons.size(); ++j) {
                a.neurons[j].d_m += b.neurons[j].d_m;
                a.neurons[j].d_b += b.neurons[j].d_b;
                a.neurons[j].d_p += b.neurons[j].d_p;
                a.neurons[j].d_q += b.neurons[j].d_q;
            }
        }
    }
    return *this;
}

NetworkGradient backward_network(const NetworkGraph& net, std::span<const GScalar> x,
                                 std::span<const double> loss_grad, GradientRequest req) {
    ForwardTrace trace;
    forward_network(net, x, &trace);
    if (loss_grad.size() != net.output_size())
        throw LengthMismatch(net.output_size(), loss_grad.size());

    NetworkGradient g = NetworkGradient::zeros_like(net);
    ElementVector adj(loss_grad.begin(), loss_grad.end());
    const bool want_pq = req.p || req.q;

    for (std::size_t l = net.layers.size(); l-- > 0;) {
        const ElementVector& in_all = trace.activations[l];
        ElementVector prev_adj(in_all.size(), GScalar(0.0));
        std::size_t out_base = 0;
        for (std::size_t k = 0; k < net.layers[l].size(); ++k) {
            const Node& node = net.layers[l][k];
            const Multiplet& mult = node.multiplet;
            MultipletGradient& mg = g.layers[l][k];
            with_coordinates(l, k, [&] {
                const ElementVector in = gather(in_all, node.inputs);
                for (std::size_t j = 0; j < mult.neurons.size(); ++j) {
                    const GScalar a = adj[out_base + j];
                    NeuronPartials np;
                    try {
                        np = neuron_partials(mult.neurons[j], mult, in, want_pq);
                    } catch (Error& e) {
                        e.set_neuron(j);
                        throw;
                    }
                    for (std::size_t i = 0; i < in.size(); ++i) {
                        mg.d_w[i] += (a * np.d_w[i]).re();
                        prev_adj[node.inputs[i]] += a * np.d_x[i];
                    }
                    NeuronGradient& ng = mg.neurons[j];
                    ng.d_m += (a * np.ratio).re();
                    ng.d_b += a.re();
                    if (req.p) ng.d_p += (a * np.d_p).re();
                    if (req.q) ng.d_q += (a * np.d_q).re();
                }
            });
            out_base += mult.neurons.size();
        }
        adj = std::move(prev_adj);
    }
    for (std::size_t i = 0; i < adj.size(); ++i) g.d_input[i] = adj[i].re();
    return g;
}

double case_slope_score(std::span<const GScalar> z, std::span<const double> w, bool squashed) {
    validate_elements(z);
    if (w.size() != z.size()) throw LengthMismatch(z.size(), w.size());
    validate_weights(w);
    bool constant = true;
    const GScalar* first = nullptr;
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (w[i] == 0.0) continue;
        if (!first) first = &z[i];
        else if (!(z[i] == *first)) constant = false;
    }
    if (constant) return 0.0;
    const GScalar hi = lehmer_mean(z, w, 6.0);
    const GScalar lo = lehmer_mean(z, w, -3.0);
    const double gap = (hi - lo).modulus();
    return squashed ? std::tanh(gap) : gap / 9.0;
}

void apply_constraints(NetworkGraph& net, std::span<const ConstraintHook> hooks) {
    auto node_at = [&](std::size_t l, std::size_t k) -> Node& {
        if (l >= net.layers.size()) throw IndexOutOfRange(l, net.layers.size());
        if (k >= net.layers[l].size()) throw IndexOutOfRange(k, net.layers[l].size());
        return net.layers[l][k];
    };
    for (const auto& hook : hooks) {
        std::visit(
            [&](const auto& c) {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, ParityConstraint>) {
                    auto& neurons = node_at(c.layer, c.node).multiplet.neurons;
                    if (c.neuron >= neurons.size()) throw IndexOutOfRange(c.neuron, neurons.size());
                    double& q = neurons[c.neuron].q;
                    if (c.parity == Parity::Even) {
                        q = 2.0 * std::round(q / 2.0);
                    } else {
                        q = 2.0 * std::round((q - 1.0) / 2.0) + 1.0;
                    }
                } else if constexpr (std::is_same_v<T, WeightFloor>) {
                    for (auto& layer : net.layers)
                        for (auto& node : layer)
                            for (double& w : node.multiplet.w) w = std::max(w, c.floor);
                } else if constexpr (std::is_same_v<T, CoefficientTie>) {
                    if (c.members.empty()) return;
                    auto& neurons = node_at(c.layer, c.node).multiplet.neurons;
                    for (const auto& [idx, f] : c.members)
                        if (idx >= neurons.size()) throw IndexOutOfRange(idx, neurons.size());
                    const auto& [i0, f0] = c.members.front();
                    if (f0 == 0.0) throw InvalidArgument("tie reference factor must be nonzero");
                    const double base = neurons[i0].m / f0;
                    for (const auto& [idx, f] : c.members) neurons[idx].m = f * base;
                } else if constexpr (std::is_same_v<T, SparsityMask>) {
                    auto& w = node_at(c.layer, c.node).multiplet.w;
                    if (c.keep.size() != w.size()) throw LengthMismatch(w.size(), c.keep.size());
                    for (std::size_t i = 0; i < w.size(); ++i)
                        if (!c.keep[i]) w[i] = 0.0;
                }
            },
            hook);
    }
}

void TrainConfig::validate() const {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidArgument("lambda must be positive");
    if (epochs == 0) throw InvalidArgument("epochs must be positive");
    if (!(css_decay >= 0.0 && css_decay < 1.0)) throw InvalidArgument("css_decay must be in [0,1)");
    for (double r : {rates.w, rates.m, rates.b, rates.p, rates.q})
        if (!(r >= 0.0) || !std::isfinite(r)) throw InvalidArgument("class rates must be >= 0");
}

namespace {

struct SampleWork {
    NetworkGradient grad;
    std::vector<std::vector<double>> nu;  // [layer][node]
    double sq_err = 0.0;
};

SampleWork evaluate_sample(const NetworkGraph& net, const Sample& s, double scale,
                           const TrainConfig& cfg, GradientRequest req) {
    SampleWork work;
    ForwardTrace trace;
    const ElementVector out = forward_network(net, s.x, &trace);
    if (s.y.size() != out.size()) throw LengthMismatch(out.size(), s.y.size());
    std::vector<double> lg(out.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        const double d = out[k].re() - s.y[k];
        work.sq_err += d * d;
        lg[k] = 2.0 * d * scale;
    }
    work.grad = backward_network(net, s.x, lg, req);
    work.nu.resize(net.layers.size());
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        for (std::size_t k = 0; k < net.layers[l].size(); ++k) {
            const Node& node = net.layers[l][k];
            double nu = std::nan("");
            const ElementVector in = gather(trace.activations[l], node.inputs);
            if (cfg.css_modulation) {
                with_coordinates(l, k, [&] { nu = case_slope_score(in, node.multiplet.w, cfg.css_squashed); });
            } else {
                try {
                    nu = case_slope_score(in, node.multiplet.w, cfg.css_squashed);
                } catch (const Error&) {
                }
            }
            work.nu[l].push_back(nu);
        }
    }
    return work;
}

void ensure_state(const NetworkGraph& net, TrainState& st) {
    if (st.nu_ema.size() == net.layers.size()) return;
    st.nu_ema.assign(net.layers.size(), {});
    st.nu_seen.assign(net.layers.size(), {});
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        st.nu_ema[l].assign(net.layers[l].size(), 0.0);
        st.nu_seen[l].assign(net.layers[l].size(), false);
    }
}

}  // namespace

StepReport modulated_step(NetworkGraph& net, std::span<const Sample> batch, const TrainConfig& cfg,
                          TrainState* state) {
    cfg.validate();
    if (batch.empty()) throw InvalidArgument("empty batch");
    TrainState local;
    TrainState& st = state ? *state : local;
    ensure_state(net, st);

    const std::size_t outputs = net.output_size();
    const double scale = 1.0 / static_cast<double>(batch.size() * outputs);
    const GradientRequest req{cfg.rates.p > 0.0, cfg.rates.q > 0.0};

    std::vector<SampleWork> work(batch.size());
    auto run = [&](std::size_t i) { work[i] = evaluate_sample(net, batch[i], scale, cfg, req); };
    if (batch.size() >= 64) {
        parallel_for(batch.size(), run);
    } else {
        for (std::size_t i = 0; i < batch.size(); ++i) run(i);
    }

    // Accumulate in sample order so results do not depend on thread count.
    NetworkGradient total = NetworkGradient::zeros_like(net);
    NetworkGradient w_step = NetworkGradient::zeros_like(net);  // nu-weighted d_w only
    StepReport report;
    double nu_sum = 0.0;
    std::size_t nu_count = 0;
    for (auto& wk : work) {
        report.loss += wk.sq_err;
        total += wk.grad;
        for (std::size_t l = 0; l < net.layers.size(); ++l) {
            for (std::size_t k = 0; k < net.layers[l].size(); ++k) {
                double nu = wk.nu[l][k];
                if (!std::isnan(nu)) {
                    nu_sum += nu;
                    ++nu_count;
                }
                double factor = 1.0;
                if (cfg.css_modulation) {
                    if (cfg.css_accumulate) {
                        double& ema = st.nu_ema[l][k];
                        if (!st.nu_seen[l][k]) {
                            ema = nu;
                            st.nu_seen[l][k] = true;
                        } else {
                            ema = cfg.css_decay * ema + (1.0 - cfg.css_decay) * nu;
                        }
                        factor = ema;
                    } else {
                        factor = nu;
                    }
                }
                auto& dst = w_step.layers[l][k].d_w;
                const auto& src = wk.grad.layers[l][k].d_w;
                if (factor == 0.0) continue;
                for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += factor * src[i];
            }
        }
    }
    report.loss *= scale;
    report.mean_nu = nu_count ? nu_sum / static_cast<double>(nu_count) : 0.0;

    const double lam = cfg.lambda;
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        for (std::size_t k = 0; k < net.layers[l].size(); ++k) {
            Multiplet& mult = net.layers[l][k].multiplet;
            const MultipletGradient& g = total.layers[l][k];
            const auto& dw = w_step.layers[l][k].d_w;
            if (cfg.rates.w > 0.0) {
                for (std::size_t i = 0; i < mult.w.size(); ++i) {
                    if (dw[i] == 0.0) continue;
                    mult.w[i] = std::max(kWeightClamp, mult.w[i] - lam * cfg.rates.w * dw[i]);
                }
            }
            for (std::size_t j = 0; j < mult.neurons.size(); ++j) {
                MultipletNeuron& n = mult.neurons[j];
                const NeuronGradient& ng = g.neurons[j];
                if (cfg.rates.m > 0.0) n.m -= lam * cfg.rates.m * ng.d_m;
                if (cfg.rates.b > 0.0) n.b -= lam * cfg.rates.b * ng.d_b;
                if (cfg.rates.p > 0.0) n.p -= lam * cfg.rates.p * ng.d_p;
                if (cfg.rates.q > 0.0) n.q -= lam * cfg.rates.q * ng.d_q;
            }
        }
    }
    apply_constraints(net, cfg.constraints);
    return report;
}

namespace {

void scan_positive(const NetworkGraph& net, std::span<const Sample> data) {
    for (const auto& s : data) {
        ForwardTrace trace;
        forward_network(net, s.x, &trace);
        for (std::size_t l = 0; l < net.layers.size(); ++l) {
            for (std::size_t k = 0; k < net.layers[l].size(); ++k) {
                const auto& inputs = net.layers[l][k].inputs;
                for (std::size_t i = 0; i < inputs.size(); ++i) {
                    const GScalar& v = trace.activations[l][inputs[i]];
                    if (!v.is_real() || !(v.re() > 0.0)) {
                        NonPositiveElement e(i);
                        e.set_layer(l);
                        e.set_multiplet(k);
                        throw e;
                    }
                }
            }
        }
    }
}

}  // namespace

TrainHistory train(NetworkGraph& net, std::span<const Sample> data, const TrainConfig& cfg) {
    cfg.validate();
    net.validate();
    if (data.empty()) throw InvalidArgument("empty training set");
    if (cfg.rates.p > 0.0 || cfg.rates.q > 0.0) scan_positive(net, data);

    TrainState st;
    st.rng.seed(cfg.seed);
    const std::size_t n = data.size();
    const std::size_t bs = cfg.batch_size == 0 ? n : std::min(cfg.batch_size, n);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);

    TrainHistory history;
    history.reserve(cfg.epochs);
    std::vector<Sample> batch;
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        if (cfg.shuffle && bs < n) std::shuffle(order.begin(), order.end(), st.rng);
        double loss = 0.0, nu = 0.0;
        for (std::size_t start = 0; start < n; start += bs) {
            const std::size_t end = std::min(n, start + bs);
            StepReport r;
            if (bs == n) {
                r = modulated_step(net, data, cfg, &st);
            } else {
                batch.clear();
                for (std::size_t i = start; i < end; ++i) batch.push_back(data[order[i]]);
                r = modulated_step(net, batch, cfg, &st);
            }
            const double frac = static_cast<double>(end - start) / static_cast<double>(n);
            loss += r.loss * frac;
            nu += r.mean_nu * frac;
        }
        history.push_back({epoch + 1, loss, nu});
    }
    return history;
}

void write_history_csv(const TrainHistory& h, std::ostream& os) {
    os << "epoch,loss,mean_nu\n";
    for (const auto& r : h)
        os << r.epoch << ',' << format_double(r.loss) << ',' << format_double(r.mean_nu) << '\n';
}

void initialize_parameters(NetworkGraph& net, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uw(0.5, 1.5);
    std::uniform_real_distribution<double> um(-1.0, 1.0);
    for (auto& layer : net.layers) {
        for (auto& node : layer) {
            Multiplet& m = node.multiplet;
            const double n = static_cast<double>(m.w.size());
            for (double& w : m.w) w = uw(rng) / n;
            for (auto& neuron : m.neurons) {
                neuron.m = um(rng);
                neuron.b = 0.0;
            }
        }
    }
}

double mean_squared_error(const NetworkGraph& net, std::span<const Sample> data) {
    double s = 0.0;
    std::size_t count = 0;
    for (const auto& smp : data) {
        const ElementVector out = forward_network(net, smp.x);
        for (std::size_t k = 0; k < out.size(); ++k) {
            const double d = out[k].re() - smp.y.at(k);
            s += d * d;
            ++count;
        }
    }
    return count ? s / static_cast<double>(count) : 0.0;
}

}  // namespace multiplet
