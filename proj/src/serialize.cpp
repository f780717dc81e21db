#include "multiplet/serialize.hpp"

#include <fstream>
#include <sstream>

#include "multiplet/errors.hpp"

namespace multiplet {

using nlohmann::json;

namespace {

double get_number(const json& j, const char* key) {
    if (!j.contains(key)) throw InvalidArgument(std::string("missing field '") + key + "'");
    const json& v = j.at(key);
    if (!v.is_number()) throw InvalidArgument(std::string("field '") + key + "' must be a number");
    return v.get<double>();
}

}  // namespace

void to_json(json& j, const MultipletNeuron& n) {
    j = json{{"m", n.m}, {"b", n.b}, {"p", n.p}, {"q", n.q}};
}

void from_json(const json& j, MultipletNeuron& n) {
    n.m = get_number(j, "m");
    n.b = get_number(j, "b");
    n.p = get_number(j, "p");
    n.q = get_number(j, "q");
}

void to_json(json& j, const Multiplet& m) {
    j = json{{"w", m.w}, {"L", m.L}, {"neurons", m.neurons}};
}

void from_json(const json& j, Multiplet& m) {
    if (!j.contains("w") || !j.at("w").is_array()) throw InvalidArgument("multiplet needs array 'w'");
    m.w = j.at("w").get<std::vector<double>>();
    m.L = get_number(j, "L");
    if (!j.contains("neurons") || !j.at("neurons").is_array())
        throw InvalidArgument("multiplet needs array 'neurons'");
    m.neurons = j.at("neurons").get<std::vector<MultipletNeuron>>();
    m.validate();
}

void to_json(json& j, const Node& n) { j = json{{"inputs", n.inputs}, {"multiplet", n.multiplet}}; }

void from_json(const json& j, Node& n) {
    n.inputs = j.at("inputs").get<std::vector<std::size_t>>();
    n.multiplet = j.at("multiplet").get<Multiplet>();
}

void to_json(json& j, const NetworkGraph& g) {
    j = json{{"input_arity", g.input_arity}, {"layers", g.layers}};
}

void from_json(const json& j, NetworkGraph& g) {
    g.input_arity = j.at("input_arity").get<std::size_t>();
    g.layers = j.at("layers").get<std::vector<Layer>>();
    g.validate();
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

NetworkGraph load_network(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open model file: " + path);
    try {
        return json::parse(in).get<NetworkGraph>();
    } catch (const json::exception& e) {
        throw InvalidArgument("malformed model file " + path + ": " + e.what());
    }
}

void save_network(const NetworkGraph& net, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write model file: " + path);
    out << dump_json(json(net));
}

}  // namespace multiplet
