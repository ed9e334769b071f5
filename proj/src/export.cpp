#include "vpn/export.hpp"

#include "vpn/dsl.hpp"
#include "vpn/format.hpp"

#include <sstream>
#include <stdexcept>

namespace vpn {

Json mset_json(const MSet& m)
{
    Json out = Json::array();
    for (const auto& [token, n] : m) {
        if (n.is_omega()) {
            out.push_back({{"token", token}, {"count", "omega"}});
            continue;
        }
        for (std::uint64_t i = 0; i < n.value(); ++i)
            out.push_back(token);
    }
    return out;
}

Json gamma_json(const Gamma& g)
{
    Json out = Json::object();
    for (const auto& [v, cs] : g)
        out[v] = cs;
    return out;
}

Json binding_json(const Binding& b)
{
    Json out = Json::object();
    for (const auto& [v, c] : b)
        out[v] = c;
    return out;
}

Json config_json(const Configuration& c)
{
    Json marking = Json::object();
    for (const auto& p : c.places)
        marking[p] = mset_json(c.tokens(p));
    return {{"marking", marking}, {"places", c.places}, {"gamma", gamma_json(c.gamma)}};
}

Json step_json(const Step& s)
{
    return {{"transition", s.transition}, {"binding", binding_json(s.binding)}};
}

Json steps_json(const std::vector<Step>& steps)
{
    Json out = Json::array();
    for (const auto& s : steps)
        out.push_back(step_json(s));
    return out;
}

Json event_json(const FiringEvent& e)
{
    auto per_place = [](const std::map<Name, MSet>& m) {
        Json out = Json::object();
        for (const auto& [p, tokens] : m)
            out[p] = mset_json(tokens);
        return out;
    };
    Json ops = Json::array();
    for (const auto& op : e.gamma_ops)
        ops.push_back({{"variable", op.variable},
                       {"constant", op.constant},
                       {"op", op.dir == LinkDir::Add ? "+" : "-"}});
    Json arcs = Json::array();
    for (const auto& [s, t] : e.solid_arcs)
        arcs.push_back({{"source", s}, {"target", t}});
    return {{"transition", e.transition},
            {"binding", binding_json(e.binding)},
            {"consumed", per_place(e.consumed)},
            {"produced", per_place(e.produced)},
            {"newPlaces", e.new_places},
            {"gammaOps", ops},
            {"solidArcs", arcs}};
}

namespace {

template <typename Edge>
Json edges_json(const std::vector<Edge>& edges)
{
    Json out = Json::array();
    for (const auto& e : edges)
        out.push_back({{"from", e.from},
                       {"to", e.to},
                       {"transition", e.label.transition},
                       {"binding", binding_json(e.label.binding)}});
    return out;
}

} // namespace

Json tree_json(const StateTree& tree)
{
    Json nodes = Json::array();
    for (const auto& n : tree.nodes)
        nodes.push_back({{"id", n.id}, {"config", config_json(n.config)}, {"kind", to_string(n.kind)}});
    return {{"nodes", nodes}, {"edges", edges_json(tree.edges)}, {"truncated", tree.truncated}};
}

Json graph_json(const ConfigurationGraph& cg)
{
    Json nodes = Json::array();
    for (std::size_t i = 0; i < cg.nodes.size(); ++i)
        nodes.push_back({{"id", i},
                         {"config", config_json(cg.nodes[i].config)},
                         {"kind", cg.nodes[i].terminal ? "terminal" : "interior"}});
    return {{"nodes", nodes}, {"edges", edges_json(cg.edges)}};
}

Json net_json(const Net& net)
{
    Json nodes = Json::array();
    for (const auto& p : net.places)
        nodes.push_back({{"id", p}, {"kind", "place"}, {"arity", net.arity(p)}});
    for (const auto& v : net.variables)
        nodes.push_back({{"id", v}, {"kind", "virtual"}});
    for (const auto& [name, t] : net.transitions) {
        Json links = Json::array();
        for (const auto& op : t.links)
            links.push_back(format_link(op));
        nodes.push_back({{"id", name}, {"kind", "transition"}, {"guard", format_guard(t.guard)}, {"links", links}});
    }
    Json arcs = Json::array();
    for (const auto& [key, w] : net.arcs)
        arcs.push_back({{"source", key.first},
                        {"target", key.second},
                        {"weight", format_weight(w)},
                        {"virtual", net.is_variable(key.first) || net.is_variable(key.second)}});
    return {{"name", net.name}, {"nodes", nodes}, {"arcs", arcs}, {"gamma", gamma_json(net.gamma0)}};
}

Binding binding_from_json(const Json& j)
{
    if (j.is_null())
        return {};
    if (!j.is_object())
        throw std::invalid_argument("binding must be an object of variable to constant");
    Binding b;
    for (const auto& [v, c] : j.items()) {
        if (!c.is_string())
            throw std::invalid_argument("binding value for '" + v + "' must be a string");
        b[v] = c.get<std::string>();
    }
    return b;
}

namespace {

std::string quote(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        if (c == '\n')
            out += "\\n";
        else
            out += c;
    }
    return out + "\"";
}

std::string config_label(const Configuration& c)
{
    return "M = " + format_marking(c.marking) + "\ngamma = " + format_gamma(c.gamma);
}

} // namespace

std::string net_dot(const Net& net)
{
    std::ostringstream out;
    out << "digraph " << quote(net.name) << " {\n  rankdir=LR;\n";
    for (const auto& p : net.places) {
        auto it = net.m0.find(p);
        const std::string tokens = it == net.m0.end() ? "" : "\n" + format_mset(it->second);
        out << "  " << quote("p:" + p) << " [shape=ellipse, label=" << quote(p + tokens) << "];\n";
    }
    for (const auto& v : net.variables)
        out << "  " << quote("v:" + v) << " [shape=ellipse, style=dashed, label=" << quote(v) << "];\n";
    for (const auto& [name, t] : net.transitions) {
        std::string label = name;
        if (!t.guard.is_true_literal())
            label += "\n" + format_guard(t.guard);
        for (const auto& op : t.links)
            label += "\n" + format_link(op);
        out << "  " << quote("t:" + name) << " [shape=box, label=" << quote(label) << "];\n";
    }
    auto id = [&](const Name& n) {
        if (net.is_transition(n))
            return quote("t:" + n);
        return quote((net.is_variable(n) ? "v:" : "p:") + n);
    };
    for (const auto& [key, w] : net.arcs) {
        const bool virt = net.is_variable(key.first) || net.is_variable(key.second);
        out << "  " << id(key.first) << " -> " << id(key.second) << " [label=" << quote(format_weight(w))
            << (virt ? ", style=dashed" : "") << "];\n";
    }
    out << "}\n";
    return out.str();
}

std::string tree_dot(const StateTree& tree)
{
    std::ostringstream out;
    out << "digraph CT {\n";
    for (const auto& n : tree.nodes) {
        out << "  n" << n.id << " [shape=box, label="
            << quote("#" + std::to_string(n.id) + " " + to_string(n.kind) + "\n" + config_label(n.config));
        if (n.kind == NodeKind::Terminal)
            out << ", peripheries=2";
        else if (n.kind == NodeKind::Duplicate || n.kind == NodeKind::Frontier)
            out << ", style=dashed";
        out << "];\n";
    }
    for (const auto& e : tree.edges)
        out << "  n" << e.from << " -> n" << e.to << " [label=" << quote(format_step(e.label)) << "];\n";
    out << "}\n";
    return out.str();
}

std::string graph_dot(const ConfigurationGraph& cg)
{
    std::ostringstream out;
    out << "digraph CG {\n";
    for (std::size_t i = 0; i < cg.nodes.size(); ++i) {
        out << "  n" << i << " [shape=box, label=" << quote("#" + std::to_string(i) + "\n" + config_label(cg.nodes[i].config));
        if (cg.nodes[i].terminal)
            out << ", peripheries=2";
        out << "];\n";
    }
    for (const auto& e : cg.edges)
        out << "  n" << e.from << " -> n" << e.to << " [label=" << quote(format_step(e.label)) << "];\n";
    out << "}\n";
    return out.str();
}

} // namespace vpn
