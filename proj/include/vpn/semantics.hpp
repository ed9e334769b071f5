#pragma once

#include "vpn/model.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace vpn {

class UnknownTransition : public std::invalid_argument
{
public:
    explicit UnknownTransition(const Name& t) : std::invalid_argument("unknown transition '" + t + "'") {}
};

class NotEnabled : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class StepNotEnabled : public NotEnabled
{
public:
    StepNotEnabled(std::size_t index, const std::string& what) : NotEnabled(what), index_(index) {}
    // Zero-based position of the failing step in the sequence.
    [[nodiscard]] std::size_t index() const { return index_; }

private:
    std::size_t index_;
};

// One transition occurrence (t, β).
struct Step
{
    Name transition;
    Binding binding;

    friend auto operator<=>(const Step&, const Step&) = default;
};

struct GammaOp
{
    Name variable;
    Name constant;
    LinkDir dir = LinkDir::Add;

    friend bool operator==(const GammaOp&, const GammaOp&) = default;
};

// Everything one firing did. Solid arcs are the instantiated virtual arcs
// (v[β], t) / (t, v[β]); they live only in this record and never enter
// the net's arc set.
struct FiringEvent
{
    Name transition;
    Binding binding;
    std::map<Name, MSet> consumed;
    std::map<Name, MSet> produced;
    std::set<Name> new_places;
    std::vector<GammaOp> gamma_ops;
    std::vector<ArcKey> solid_arcs;

    friend bool operator==(const FiringEvent&, const FiringEvent&) = default;
};

struct Firing
{
    Configuration config;
    FiringEvent event;
};

// All β under which t is enabled at `config`, in canonical order.
// Throws UnknownTransition.
[[nodiscard]] std::vector<Binding> enumerate_bindings(const Net& net, const Configuration& config,
                                                      const Name& transition);

[[nodiscard]] bool is_enabled(const Net& net, const Configuration& config, const Name& transition,
                              const Binding& binding);

// γ after executing the ρ operations of t whose conditions hold under β.
// Removing an absent link is a no-op.
[[nodiscard]] Gamma apply_rho(const Net& net, const Gamma& gamma, const Name& transition, const Binding& binding);

// Throws NotEnabled (or UnknownTransition).
[[nodiscard]] Firing fire(const Net& net, const Configuration& config, const Name& transition,
                          const Binding& binding);

[[nodiscard]] std::vector<Step> enabled_set(const Net& net, const Configuration& config);

// Π0, Π1, ..., Πk. Throws StepNotEnabled naming the failing index.
[[nodiscard]] std::vector<Configuration> fire_sequence(const Net& net, std::span<const Step> steps);
[[nodiscard]] std::vector<Configuration> fire_sequence(const Net& net, const Configuration& start,
                                                       std::span<const Step> steps);

} // namespace vpn
