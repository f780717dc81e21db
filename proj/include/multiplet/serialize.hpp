#pragma once

#include <string>

#include <json.hpp>

#include "multiplet/network.hpp"

namespace multiplet {

void to_json(nlohmann::json& j, const MultipletNeuron& n);
void from_json(const nlohmann::json& j, MultipletNeuron& n);
void to_json(nlohmann::json& j, const Multiplet& m);
void from_json(const nlohmann::json& j, Multiplet& m);
void to_json(nlohmann::json& j, const Node& n);
void from_json(const nlohmann::json& j, Node& n);
void to_json(nlohmann::json& j, const NetworkGraph& g);
void from_json(const nlohmann::json& j, NetworkGraph& g);

/// Pretty JSON text; doubles are written in shortest round-trip form.
std::string dump_json(const nlohmann::json& j);

NetworkGraph load_network(const std::string& path);
void save_network(const NetworkGraph& net, const std::string& path);

}  // namespace multiplet
