#include "multiplet/softlogic.hpp"

#include <cmath>
#include <vector>

#include "multiplet/errors.hpp"

namespace multiplet {

void LogicConfig::validate() const {
    if (!(T > 0.0)) throw InvalidArgument("T must be positive");
    if (!(p_or > 1.0)) throw InvalidArgument("p_or must exceed 1");
    if (!(p_and < 0.0)) throw InvalidArgument("p_and must be negative");
    if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
}

GScalar neg(const GScalar& x, const LogicConfig& cfg) { return GScalar(cfg.T) - x; }

GScalar conj(std::span<const GScalar> x, const LogicConfig& cfg) {
    return lehmer_mean(x, cfg.p_and);
}

GScalar conj(std::span<const GScalar> x, std::span<const double> w, const LogicConfig& cfg) {
    return lehmer_mean(x, w, cfg.p_and);
}

GScalar disj(std::span<const GScalar> x, const LogicConfig& cfg) {
    return lehmer_mean(x, cfg.p_or);
}

GScalar disj(std::span<const GScalar> x, std::span<const double> w, const LogicConfig& cfg) {
    return lehmer_mean(x, w, cfg.p_or);
}

DuetSinglet xor_duet_singlet(std::span<const GScalar> x, std::span<const double> w,
                             const LogicConfig& cfg) {
    if (x.size() < 2) throw InvalidArgument("xor needs at least two elements");
    DuetSinglet r;
    r.sigma1 = disj(x, w, cfg);
    r.sigma2 = neg(conj(x, w, cfg), cfg);
    const GScalar pair[2] = {r.sigma1, r.sigma2};
    r.chi = conj(pair, cfg);
    return r;
}

DuetSinglet xor_duet_singlet(std::span<const GScalar> x, const LogicConfig& cfg) {
    const std::vector<double> ones(x.size(), 1.0);
    return xor_duet_singlet(x, ones, cfg);
}

GScalar xnor_i(std::span<const GScalar> x, const LogicConfig& cfg) {
    const GScalar pair[2] = {neg(disj(x, cfg), cfg), conj(x, cfg)};
    return disj(pair, cfg);
}

GScalar xnor_ii(std::span<const GScalar> x, const LogicConfig& cfg) {
    ElementVector nx;
    nx.reserve(x.size());
    for (const auto& v : x) nx.push_back(neg(v, cfg));
    const GScalar pair[2] = {conj(x, cfg), conj(nx, cfg)};
    return disj(pair, cfg);
}

GScalar interval_estimate(std::span<const GScalar> x, double eps, const LogicConfig& cfg) {
    if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
    validate_elements(x);
    ElementVector a{GScalar(eps)}, b{GScalar(eps)};
    for (const auto& v : x) {
        a.push_back(v);
        b.push_back(neg(v, cfg));
    }
    const GScalar pair[2] = {disj(a, cfg), disj(b, cfg)};
    return conj(pair, cfg);
}

SurfaceGrid xor_surface(const SurfaceSpec& grid, const LogicConfig& cfg,
                        std::optional<ThirdElement> third) {
    cfg.validate();
    Axis a1{"x1", linspace(grid.lo, grid.hi, grid.resolution)};
    Axis a2{"x2", linspace(grid.lo, grid.hi, grid.resolution)};
    return sample_surface(std::move(a1), std::move(a2), [&](double x1, double x2) {
        const GScalar two[2] = {GScalar(x1), GScalar(x2)};
        const ElementVector lifted2 = complex_lift(two, cfg.epsilon);
        const double base = xor_duet_singlet(lifted2, cfg).chi.re();
        if (!third) return base;
        const GScalar three[3] = {GScalar(x1), GScalar(x2), GScalar(third->x3)};
        const ElementVector lifted3 = complex_lift(three, cfg.epsilon);
        const double w[3] = {1.0, 1.0, third->w3};
        return xor_duet_singlet(lifted3, w, cfg).chi.re() - base;
    });
}

}  // namespace multiplet
