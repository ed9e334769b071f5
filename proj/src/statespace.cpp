#include "vpn/statespace.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace vpn {

const char* to_string(NodeKind kind)
{
    switch (kind) {
    case NodeKind::Interior: return "interior";
    case NodeKind::Duplicate: return "duplicate";
    case NodeKind::Terminal: return "terminal";
    case NodeKind::Frontier: return "frontier";
    }
    return "?";
}

bool StateTree::has_omega() const
{
    return std::any_of(nodes.begin(), nodes.end(), [](const TreeNode& n) { return n.config.has_omega(); });
}

std::size_t StateTree::count(NodeKind kind) const
{
    return static_cast<std::size_t>(
        std::count_if(nodes.begin(), nodes.end(), [kind](const TreeNode& n) { return n.kind == kind; }));
}

std::vector<std::size_t> StateTree::path_to(std::size_t id) const
{
    std::vector<std::size_t> path;
    for (std::optional<std::size_t> cur = id; cur; cur = nodes.at(*cur).parent)
        path.push_back(*cur);
    std::reverse(path.begin(), path.end());
    return path;
}

namespace {

bool marking_leq(const Marking& a, const Marking& b)
{
    for (const auto& [p, tokens] : a) {
        auto it = b.find(p);
        if (it == b.end()) {
            if (!tokens.empty())
                return false;
        } else if (!leq(tokens, it->second)) {
            return false;
        }
    }
    return true;
}

void accelerate(Configuration& next, const StateTree& tree, std::size_t parent)
{
    for (std::size_t id : tree.path_to(parent)) {
        const Configuration& anc = tree.nodes[id].config;
        if (anc.places != next.places || anc.gamma != next.gamma)
            continue;
        if (anc.marking == next.marking || !marking_leq(anc.marking, next.marking))
            continue;
        for (auto& [p, tokens] : next.marking) {
            const MSet& before = anc.tokens(p);
            for (const auto& [token, n] : MSet(tokens))
                if (before.count(token) < n)
                    tokens.set(token, Count::omega());
        }
    }
}

bool repeats_ancestor(const StateTree& tree, std::size_t id)
{
    const Configuration& c = tree.nodes[id].config;
    for (auto cur = tree.nodes[id].parent; cur; cur = tree.nodes[*cur].parent)
        if (tree.nodes[*cur].config == c)
            return true;
    return false;
}

std::size_t add_node(StateTree& tree, Configuration config, std::optional<std::size_t> parent)
{
    const std::size_t id = tree.nodes.size();
    const std::size_t depth = parent ? tree.nodes[*parent].depth + 1 : 0;
    tree.nodes.push_back({id, std::move(config), NodeKind::Interior, parent, depth});
    return id;
}

} // namespace

ReachabilityTree build_rt(const Net& net, std::size_t depth_limit)
{
    ReachabilityTree tree;
    add_node(tree, net.initial_configuration(), std::nullopt);
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
        const std::size_t id = queue.front();
        queue.pop_front();
        auto steps = enabled_set(net, tree.nodes[id].config);
        if (steps.empty()) {
            tree.nodes[id].kind = NodeKind::Terminal;
            continue;
        }
        if (tree.nodes[id].depth >= depth_limit) {
            tree.nodes[id].kind = NodeKind::Frontier;
            tree.truncated = true;
            continue;
        }
        for (auto& step : steps) {
            Configuration next = fire(net, tree.nodes[id].config, step.transition, step.binding).config;
            const std::size_t child = add_node(tree, std::move(next), id);
            tree.edges.push_back({id, child, std::move(step)});
            queue.push_back(child);
        }
    }
    return tree;
}

ConfigurationTree build_ct(const Net& net, const CtOptions& options)
{
    ConfigurationTree tree;
    add_node(tree, net.initial_configuration(), std::nullopt);
    std::unordered_set<Configuration, ConfigurationHash> expanded;
    std::vector<std::size_t> stack{0};

    while (!stack.empty()) {
        const std::size_t id = stack.back();
        stack.pop_back();

        const bool duplicate = options.duplicates == DuplicateScope::Tree
                                   ? expanded.count(tree.nodes[id].config) != 0
                                   : repeats_ancestor(tree, id);
        if (duplicate) {
            tree.nodes[id].kind = NodeKind::Duplicate;
            continue;
        }
        expanded.insert(tree.nodes[id].config);

        auto steps = enabled_set(net, tree.nodes[id].config);
        if (steps.empty()) {
            tree.nodes[id].kind = NodeKind::Terminal;
            continue;
        }

        std::vector<std::size_t> children;
        children.reserve(steps.size());
        for (auto& step : steps) {
            Configuration next = fire(net, tree.nodes[id].config, step.transition, step.binding).config;
            accelerate(next, tree, id);
            const std::size_t child = add_node(tree, std::move(next), id);
            tree.edges.push_back({id, child, std::move(step)});
            children.push_back(child);
            if (tree.nodes.size() > options.node_budget) {
                tree.truncated = true;
                throw BudgetExceeded("configuration tree exceeds the node budget of " +
                                         std::to_string(options.node_budget),
                                     std::move(tree));
            }
        }
        stack.insert(stack.end(), children.rbegin(), children.rend());
    }
    return tree;
}

bool ConfigurationGraph::has_omega() const
{
    return std::any_of(nodes.begin(), nodes.end(), [](const GraphNode& n) { return n.config.has_omega(); });
}

ConfigurationGraph ct_to_cg(const ConfigurationTree& ct)
{
    ConfigurationGraph cg;
    std::unordered_map<Configuration, std::size_t, ConfigurationHash> index;
    std::vector<std::size_t> rep(ct.nodes.size());
    for (const auto& node : ct.nodes) {
        auto [it, inserted] = index.emplace(node.config, cg.nodes.size());
        if (inserted)
            cg.nodes.push_back({node.config, false});
        if (node.kind == NodeKind::Terminal)
            cg.nodes[it->second].terminal = true;
        rep[node.id] = it->second;
    }
    std::set<GraphEdge> seen;
    for (const auto& e : ct.edges) {
        GraphEdge g{rep[e.from], rep[e.to], e.label};
        if (seen.insert(g).second)
            cg.edges.push_back(std::move(g));
    }
    return cg;
}

std::vector<Configuration> exact_reachability(const Net& net, std::size_t budget)
{
    std::vector<Configuration> found{net.initial_configuration()};
    std::unordered_set<Configuration, ConfigurationHash> seen{found.front()};
    for (std::size_t i = 0; i < found.size(); ++i) {
        for (const auto& step : enabled_set(net, found[i])) {
            Configuration next = fire(net, found[i], step.transition, step.binding).config;
            if (seen.insert(next).second) {
                found.push_back(std::move(next));
                if (found.size() > budget)
                    throw ReachabilityBudgetExceeded("more than " + std::to_string(budget) +
                                                     " reachable configurations");
            }
        }
    }
    return found;
}

} // namespace vpn
