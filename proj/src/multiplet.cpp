#include "multiplet/multiplet.hpp"

#include <cmath>
#include <map>

#include "multiplet/errors.hpp"

namespace multiplet {

namespace {

double weight_power(double w, double L) { return L == 1.0 ? w : std::pow(w, L); }

void check_x(const Multiplet& mult, std::span<const GScalar> x) {
    validate_elements(x);
    if (x.size() != mult.w.size()) throw LengthMismatch(mult.w.size(), x.size());
}

}  // namespace

void Multiplet::validate() const {
    if (w.empty()) throw InvalidArgument("multiplet needs at least one weight");
    validate_weights(w);
    if (!std::isfinite(L) || L < 1.0) throw InvalidArgument("weight exponent L must be >= 1");
    if (neurons.empty()) throw InvalidArgument("multiplet needs at least one neuron");
    for (const auto& n : neurons)
        if (!std::isfinite(n.m) || !std::isfinite(n.b) || !std::isfinite(n.p) ||
            !std::isfinite(n.q))
            throw InvalidArgument("neuron parameters must be finite");
}

WeightVector Multiplet::effective_weights() const {
    WeightVector out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) out[i] = weight_power(w[i], L);
    return out;
}

GScalar forward(const MultipletNeuron& neuron, const Multiplet& mult, std::span<const GScalar> x) {
    check_x(mult, x);
    const WeightVector wl = mult.effective_weights();
    detail::maybe_warn_precision(x, neuron.p);
    const GScalar num = detail::power_sum(x, wl, neuron.p);
    double mag = 0.0;
    const GScalar den = detail::power_sum(x, wl, neuron.p - neuron.q, &mag);
    detail::require_denominator(den, mag);
    return GScalar(neuron.b) + GScalar(neuron.m) * (num / den);
}

std::vector<GScalar> forward_multiplet(const Multiplet& mult, std::span<const GScalar> x) {
    check_x(mult, x);
    const WeightVector wl = mult.effective_weights();
    std::map<double, std::pair<GScalar, double>> sums;
    auto sum = [&](double r) -> const std::pair<GScalar, double>& {
        auto it = sums.find(r);
        if (it == sums.end()) {
            double mag = 0.0;
            const GScalar s = detail::power_sum(x, wl, r, &mag);
            it = sums.emplace(r, std::make_pair(s, mag)).first;
        }
        return it->second;
    };
    std::vector<GScalar> out;
    out.reserve(mult.neurons.size());
    for (std::size_t j = 0; j < mult.neurons.size(); ++j) {
        const auto& n = mult.neurons[j];
        try {
            detail::maybe_warn_precision(x, n.p);
            const GScalar num = sum(n.p).first;
            const auto& [den, mag] = sum(n.p - n.q);
            detail::require_denominator(den, mag);
            out.push_back(GScalar(n.b) + GScalar(n.m) * (num / den));
        } catch (Error& e) {
            e.set_neuron(j);
            throw;
        }
    }
    return out;
}

std::size_t param_count(const Multiplet& mult, bool lehmer_only) {
    return mult.w.size() + (lehmer_only ? 3 : 4) * mult.neurons.size();
}

NeuronPartials neuron_partials(const MultipletNeuron& neuron, const Multiplet& mult,
                               std::span<const GScalar> x, bool want_pq) {
    check_x(mult, x);
    const std::size_t n = x.size();
    const double p = neuron.p;
    const double r = neuron.p - neuron.q;
    const GScalar m(neuron.m);

    std::vector<GScalar> xp(n), xr(n);
    GScalar N, D;
    double mag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        xp[i] = power(x[i], p);
        xr[i] = power(x[i], r);
        const GScalar wl(weight_power(mult.w[i], mult.L));
        N += wl * xp[i];
        D += wl * xr[i];
        mag += (wl * xr[i]).modulus();
    }
    detail::require_denominator(D, mag);

    NeuronPartials out;
    out.ratio = N / D;
    out.value = GScalar(neuron.b) + m * out.ratio;
    const GScalar D2 = D * D;
    out.d_w.resize(n);
    out.d_x.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double wi = mult.w[i];
        const double dwl = mult.L == 1.0 ? 1.0 : mult.L * std::pow(wi, mult.L - 1.0);
        out.d_w[i] = m * GScalar(dwl) * (D * xp[i] - N * xr[i]) / D2;
        const GScalar wl(weight_power(wi, mult.L));
        if (wl.re() == 0.0) {
            out.d_x[i] = GScalar(0.0);
            continue;
        }
        // x^(p-1), x^(p-q-1); a zero exponent term contributes nothing
        const GScalar a = p == 0.0 ? GScalar(0.0) : GScalar(p) * power(x[i], p - 1.0);
        const GScalar c = r == 0.0 ? GScalar(0.0) : GScalar(r) * power(x[i], r - 1.0);
        out.d_x[i] = m * wl * (D * a - N * c) / D2;
    }
    if (want_pq) {
        GScalar sn, sd;
        for (std::size_t i = 0; i < n; ++i) {
            if (!x[i].is_real() || !(x[i].re() > 0.0)) throw NonPositiveElement(i);
            const GScalar wl(weight_power(mult.w[i], mult.L));
            const GScalar lx(std::log(x[i].re()));
            sn += wl * xp[i] * lx;
            sd += wl * xr[i] * lx;
        }
        out.d_p = m * (D * sn - N * sd) / D2;
        out.d_q = m * N * sd / D2;
    }
    return out;
}

GradientBundle gradients(const MultipletNeuron& neuron, const Multiplet& mult,
                         std::span<const GScalar> x) {
    check_x(mult, x);
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!x[i].is_real() || !(x[i].re() > 0.0)) throw NonPositiveElement(i);
    const NeuronPartials np = neuron_partials(neuron, mult, x, true);
    GradientBundle g;
    g.d_w.reserve(np.d_w.size());
    for (const auto& d : np.d_w) g.d_w.push_back(d.re());
    g.d_m = np.ratio.re();
    g.d_b = 1.0;
    g.d_p = np.d_p.re();
    g.d_q = np.d_q.re();
    return g;
}

WeightVector attention_weights(std::span<const double> base, std::size_t k, double alpha) {
    if (k >= base.size()) throw IndexOutOfRange(k, base.size());
    if (!(alpha >= 0.0)) throw InvalidArgument("alpha must be non-negative");
    WeightVector out(base.begin(), base.end());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double d = static_cast<double>(i) - static_cast<double>(k);
        out[i] *= std::exp(-alpha * d * d);
    }
    return out;
}

WeightVector attention_weights_2d(std::span<const double> base, GridShape shape, std::size_t j,
                                  std::size_t k, double alpha) {
    if (shape.height * shape.width != base.size())
        throw LengthMismatch(shape.height * shape.width, base.size());
    if (j >= shape.height) throw IndexOutOfRange(j, shape.height);
    if (k >= shape.width) throw IndexOutOfRange(k, shape.width);
    if (!(alpha >= 0.0)) throw InvalidArgument("alpha must be non-negative");
    WeightVector out(base.begin(), base.end());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double dr = static_cast<double>(i / shape.width) - static_cast<double>(j);
        const double dc = static_cast<double>(i % shape.width) - static_cast<double>(k);
        out[i] *= std::exp(-alpha * dr * dr) * std::exp(-alpha * dc * dc);
    }
    return out;
}

}  // namespace multiplet
