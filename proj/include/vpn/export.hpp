#pragma once

#include "vpn/statespace.hpp"

#include <json.hpp>

#include <string>

namespace vpn {

using Json = nlohmann::json;

// JSON encodings. Objects have sorted keys, so dump() is byte-stable.

// Array of token arrays, one entry per unit of multiplicity; an ω count
// becomes {"token": [...], "count": "omega"}.
[[nodiscard]] Json mset_json(const MSet& m);
[[nodiscard]] Json gamma_json(const Gamma& g);
[[nodiscard]] Json binding_json(const Binding& b);
[[nodiscard]] Json config_json(const Configuration& c);
[[nodiscard]] Json step_json(const Step& s);
[[nodiscard]] Json steps_json(const std::vector<Step>& steps);
[[nodiscard]] Json event_json(const FiringEvent& e);
[[nodiscard]] Json tree_json(const StateTree& tree);
[[nodiscard]] Json graph_json(const ConfigurationGraph& cg);
// Rendering model: typed nodes plus arcs with virtual flags.
[[nodiscard]] Json net_json(const Net& net);

// Reads {"variable": "constant", ...}. Throws std::invalid_argument.
[[nodiscard]] Binding binding_from_json(const Json& j);

// Graphviz renderings.
[[nodiscard]] std::string net_dot(const Net& net);
[[nodiscard]] std::string tree_dot(const StateTree& tree);
[[nodiscard]] std::string graph_dot(const ConfigurationGraph& cg);

} // namespace vpn
