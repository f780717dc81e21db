#include "multiplet/tasks.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "multiplet/errors.hpp"

namespace multiplet {

NetworkGraph xor_network() {
    NetworkGraph g;
    g.input_arity = 2;
    Node duet;
    duet.inputs = {0, 1};
    duet.multiplet.w = {1.0, 1.0};
    duet.multiplet.neurons = {{1.0, 0.0, 7.0, 1.0}, {-1.0, 1.0, -3.0, 1.0}};
    Node singlet;
    singlet.inputs = {0, 1};
    singlet.multiplet.w = {1.0, 1.0};
    singlet.multiplet.neurons = {{1.0, 0.0, -3.0, 1.0}};
    g.layers = {{duet}, {singlet}};
    g.validate();
    return g;
}

std::vector<Sample> xor_dataset(double epsilon) {
    std::vector<Sample> out;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            out.push_back({{GScalar(a, epsilon), GScalar(b, epsilon)}, {double(a ^ b)}});
    return out;
}

IrisData load_iris(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open " + path);
    std::string line;
    std::getline(in, line);  // header
    IrisData d;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (row.size() != 5) throw InvalidArgument("iris row must have 5 columns");
        d.labels.push_back(static_cast<int>(row[4]));
        row.pop_back();
        d.features.push_back(std::move(row));
    }
    return d;
}

std::vector<Sample> iris_samples(const IrisData& d, double lo, double hi) {
    std::vector<Sample> out;
    if (d.features.empty()) return out;
    double mn[2] = {1e300, 1e300}, mx[2] = {-1e300, -1e300};
    for (const auto& f : d.features)
        for (int c = 0; c < 2; ++c) {
            mn[c] = std::min(mn[c], f[2 + c]);
            mx[c] = std::max(mx[c], f[2 + c]);
        }
    for (std::size_t i = 0; i < d.features.size(); ++i) {
        Sample s;
        for (int c = 0; c < 2; ++c) {
            const double t = (d.features[i][2 + c] - mn[c]) / (mx[c] - mn[c]);
            s.x.emplace_back(lo + (hi - lo) * t);
        }
        s.y.assign(3, 0.0);
        s.y.at(static_cast<std::size_t>(d.labels[i])) = 1.0;
        out.push_back(std::move(s));
    }
    return out;
}

NetworkGraph iris_network() {
    NetworkGraph g;
    g.input_arity = 2;
    Node node;
    node.inputs = {0, 1};
    node.multiplet.w = {1.0, 1.0};
    node.multiplet.neurons = {{1.0, 0.0, -3.0, -3.0}, {1.0, 0.0, 1.0, 1.0}, {1.0, 0.0, 8.0, 8.0}};
    g.layers = {{node}};
    g.validate();
    return g;
}

std::size_t count_misclassified(const NetworkGraph& net, const std::vector<Sample>& data) {
    std::size_t bad = 0;
    for (const auto& s : data) {
        const ElementVector out = forward_network(net, s.x);
        std::size_t best = 0;
        for (std::size_t k = 1; k < out.size(); ++k)
            if (out[k].re() > out[best].re()) best = k;
        const auto target = static_cast<std::size_t>(
            std::max_element(s.y.begin(), s.y.end()) - s.y.begin());
        if (best != target) ++bad;
    }
    return bad;
}

}  // namespace multiplet
