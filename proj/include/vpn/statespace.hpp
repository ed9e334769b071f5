#pragma once

#include "vpn/semantics.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace vpn {

enum class NodeKind {
    Interior,
    Duplicate,  // configuration already expanded elsewhere (see DuplicateScope)
    Terminal,   // no (t, β) is enabled
    Frontier,   // reachability tree only: cut off by the depth limit
};

[[nodiscard]] const char* to_string(NodeKind kind);

struct TreeNode
{
    std::size_t id = 0;
    Configuration config;
    NodeKind kind = NodeKind::Interior;
    std::optional<std::size_t> parent;
    std::size_t depth = 0;
};

struct TreeEdge
{
    std::size_t from = 0;
    std::size_t to = 0;
    Step label;
};

// Nodes are indexed by id; node 0 is Π0.
struct StateTree
{
    std::vector<TreeNode> nodes;
    std::vector<TreeEdge> edges;
    bool truncated = false;

    [[nodiscard]] bool has_omega() const;
    [[nodiscard]] std::size_t count(NodeKind kind) const;
    [[nodiscard]] std::vector<std::size_t> path_to(std::size_t id) const;
};

using ConfigurationTree = StateTree;
using ReachabilityTree = StateTree;

class BudgetExceeded : public std::runtime_error
{
public:
    BudgetExceeded(const std::string& what, StateTree partial)
        : std::runtime_error(what), partial_(std::move(partial)) {}
    [[nodiscard]] const StateTree& partial() const { return partial_; }

private:
    StateTree partial_;
};

class ReachabilityBudgetExceeded : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Where a configuration must have appeared before for a node to count as a
// duplicate leaf. `Tree` compares against every node expanded so far, so
// each distinct configuration is expanded exactly once; `Path` compares
// against the node's own ancestors only.
enum class DuplicateScope { Tree, Path };

struct CtOptions
{
    std::size_t node_budget = 100000;
    DuplicateScope duplicates = DuplicateScope::Tree;
};

// Exact reachability tree, breadth-first, cut at `depth_limit`.
[[nodiscard]] ReachabilityTree build_rt(const Net& net, std::size_t depth_limit);

// Configuration tree with ω acceleration, built depth first from Π0.
// A new configuration that strictly covers an ancestor with the same place
// set and γ gets ω at every (place, token) count that grew.
// Throws BudgetExceeded carrying the partial tree.
[[nodiscard]] ConfigurationTree build_ct(const Net& net, const CtOptions& options = {});

struct GraphNode
{
    Configuration config;
    bool terminal = false;
};

struct GraphEdge
{
    std::size_t from = 0;
    std::size_t to = 0;
    Step label;

    friend auto operator<=>(const GraphEdge&, const GraphEdge&) = default;
};

struct ConfigurationGraph
{
    std::vector<GraphNode> nodes;
    std::vector<GraphEdge> edges;

    [[nodiscard]] bool has_omega() const;
};

// Quotient of the tree by configuration equality; node order follows the
// first occurrence in the tree.
[[nodiscard]] ConfigurationGraph ct_to_cg(const ConfigurationTree& ct);

// Breadth-first closure of Π0 under fire, without acceleration.
// Throws ReachabilityBudgetExceeded when more than `budget` configurations
// are found.
[[nodiscard]] std::vector<Configuration> exact_reachability(const Net& net, std::size_t budget = 100000);

} // namespace vpn
