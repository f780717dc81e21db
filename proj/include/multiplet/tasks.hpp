#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "multiplet/network.hpp"

namespace multiplet {

/// Duet (p=7 disjunction, p=-3 complemented conjunction) feeding a p=-3 singlet.
NetworkGraph xor_network();

/// The four binary corners, lifted by epsilon, with XOR targets.
std::vector<Sample> xor_dataset(double epsilon = 1e-6);

struct IrisData {
    std::vector<std::vector<double>> features;  ///< 4 columns
    std::vector<int> labels;                    ///< 0..2
};

/// CSV with a "count,dims,names..." header line, then rows of 4 features and a label.
IrisData load_iris(const std::string& path);

/// Petal length/width min-max scaled to [lo, hi], one-hot targets.
std::vector<Sample> iris_samples(const IrisData& d, double lo = 0.5, double hi = 1.0);

/// One multiplet over the two petal features with three neurons at fixed
/// (p, q) = (-3,-3), (1,1), (8,8); trainable w, m, b.
NetworkGraph iris_network();

/// Samples whose argmax output differs from the argmax target.
std::size_t count_misclassified(const NetworkGraph& net, const std::vector<Sample>& data);

}  // namespace multiplet
