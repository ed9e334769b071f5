#pragma once

#include "vpn/statespace.hpp"

#include <map>
#include <optional>
#include <set>
#include <vector>

namespace vpn {

struct BoundReport
{
    std::map<Name, Count> per_place;
    Count net_bound;
    bool safe = false;  // net_bound == 1
};

// Largest total token count of `place` over the tree's configurations;
// ω if any count is ω, 0 if the place never exists.
[[nodiscard]] Count place_bound(const ConfigurationTree& ct, const Name& place);

// Bounds of every place that appears in some configuration's place set.
[[nodiscard]] BoundReport net_bound(const ConfigurationTree& ct);

struct DeadlockReport
{
    std::vector<Configuration> configurations;  // distinct, in tree order
    bool advisory = false;                      // the tree contains ω
};

[[nodiscard]] DeadlockReport find_deadlocks(const ConfigurationTree& ct);

enum class Liveness { Live, NotLive, Unknown };

[[nodiscard]] const char* to_string(Liveness l);

struct LivenessVerdict
{
    Liveness verdict = Liveness::Unknown;
    std::optional<std::size_t> witness;  // CG node from which t is never enabled again
};

// Decided only on ω-free graphs; otherwise Unknown.
[[nodiscard]] LivenessVerdict check_liveness(const ConfigurationGraph& cg, const Name& transition);

// Every γ on the tree, plus γ0.
[[nodiscard]] std::set<Gamma> connectivity_set(const ConfigurationTree& ct);

// Per-variable set difference a(v) − b(v).
[[nodiscard]] Gamma gamma_diff(const Gamma& a, const Gamma& b);

[[nodiscard]] Gamma gamma_union(const Gamma& a, const Gamma& b);

struct LinkTuple
{
    Gamma created;     // C-set: links added along some edge
    Gamma broken;      // B-set: links removed along some edge
    Gamma maintained;  // A-set: (γ0 ∪ C-set) − B-set
};

[[nodiscard]] LinkTuple link_tuple(const ConfigurationGraph& cg, const Gamma& gamma0);

} // namespace vpn
