#include "vpn/analysis.hpp"

#include <deque>
#include <unordered_set>

namespace vpn {

Count place_bound(const ConfigurationTree& ct, const Name& place)
{
    Count best;
    for (const auto& node : ct.nodes)
        if (node.config.places.count(place))
            best = std::max(best, node.config.tokens(place).total());
    return best;
}

BoundReport net_bound(const ConfigurationTree& ct)
{
    BoundReport r;
    for (const auto& node : ct.nodes) {
        for (const auto& p : node.config.places) {
            const Count n = node.config.tokens(p).total();
            auto [it, inserted] = r.per_place.emplace(p, n);
            if (!inserted)
                it->second = std::max(it->second, n);
        }
    }
    for (const auto& [p, n] : r.per_place)
        r.net_bound = std::max(r.net_bound, n);
    r.safe = r.net_bound == Count(1);
    return r;
}

DeadlockReport find_deadlocks(const ConfigurationTree& ct)
{
    DeadlockReport r;
    r.advisory = ct.has_omega();
    std::unordered_set<Configuration, ConfigurationHash> seen;
    for (const auto& node : ct.nodes)
        if (node.kind == NodeKind::Terminal && seen.insert(node.config).second)
            r.configurations.push_back(node.config);
    return r;
}

const char* to_string(Liveness l)
{
    switch (l) {
    case Liveness::Live: return "live";
    case Liveness::NotLive: return "not-live";
    case Liveness::Unknown: return "unknown";
    }
    return "?";
}

LivenessVerdict check_liveness(const ConfigurationGraph& cg, const Name& transition)
{
    if (cg.has_omega())
        return {Liveness::Unknown, std::nullopt};

    // Backward search from every node with an outgoing t-labelled edge.
    std::vector<std::vector<std::size_t>> preds(cg.nodes.size());
    std::vector<bool> reaches(cg.nodes.size(), false);
    std::deque<std::size_t> queue;
    for (const auto& e : cg.edges) {
        preds[e.to].push_back(e.from);
        if (e.label.transition == transition && !reaches[e.from]) {
            reaches[e.from] = true;
            queue.push_back(e.from);
        }
    }
    while (!queue.empty()) {
        const std::size_t n = queue.front();
        queue.pop_front();
        for (std::size_t p : preds[n])
            if (!reaches[p]) {
                reaches[p] = true;
                queue.push_back(p);
            }
    }
    for (std::size_t i = 0; i < cg.nodes.size(); ++i)
        if (!reaches[i])
            return {Liveness::NotLive, i};
    return {Liveness::Live, std::nullopt};
}

std::set<Gamma> connectivity_set(const ConfigurationTree& ct)
{
    std::set<Gamma> out;
    for (const auto& node : ct.nodes)
        out.insert(node.config.gamma);
    return out;
}

Gamma gamma_diff(const Gamma& a, const Gamma& b)
{
    Gamma out;
    for (const auto& [v, cs] : a)
        for (const auto& c : cs)
            if (!b.contains(v, c))
                out.add(v, c);
    return out;
}

Gamma gamma_union(const Gamma& a, const Gamma& b)
{
    Gamma out = a;
    for (const auto& [v, cs] : b)
        for (const auto& c : cs)
            out.add(v, c);
    return out;
}

LinkTuple link_tuple(const ConfigurationGraph& cg, const Gamma& gamma0)
{
    LinkTuple lt;
    for (const auto& e : cg.edges) {
        const Gamma& before = cg.nodes[e.from].config.gamma;
        const Gamma& after = cg.nodes[e.to].config.gamma;
        lt.created = gamma_union(lt.created, gamma_diff(after, before));
        lt.broken = gamma_union(lt.broken, gamma_diff(before, after));
    }
    lt.maintained = gamma_diff(gamma_union(gamma0, lt.created), lt.broken);
    return lt;
}

} // namespace vpn
