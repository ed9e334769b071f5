#pragma once

#include "vpn/multiset.hpp"

#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace vpn {

// Reserved spelling of the black token ε.
inline constexpr const char* kEpsilon = "eps";

// Partial assignment of variables to constants.
using Binding = std::map<Name, Name>;

class UnboundVariable : public std::runtime_error
{
public:
    explicit UnboundVariable(const Name& variable)
        : std::runtime_error("unbound variable '" + variable + "'"), variable_(variable) {}
    [[nodiscard]] const Name& variable() const { return variable_; }

private:
    Name variable_;
};

// A name as it occurs in an arc pattern or a guard atom, resolved against
// the declarations.
struct Symbol
{
    Name text;
    bool variable = false;

    static Symbol constant(Name n) { return {std::move(n), false}; }
    static Symbol var(Name n) { return {std::move(n), true}; }

    // Constant text, or β(text) for a variable.
    [[nodiscard]] const Name& resolve(const Binding& binding) const;

    friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

using Pattern = std::vector<Symbol>;

// W(f): either ∅ (only on virtual output arcs) or a multiset of patterns.
struct ArcExpr
{
    bool empty_set = false;
    std::map<Pattern, std::uint64_t> terms;

    static ArcExpr empty() { return ArcExpr{true, {}}; }
    static ArcExpr of(Pattern p, std::uint64_t n = 1);

    [[nodiscard]] std::set<Name> variables() const;
    // W[β]. Throws UnboundVariable.
    [[nodiscard]] MSet instantiate(const Binding& binding) const;

    friend bool operator==(const ArcExpr&, const ArcExpr&) = default;
};

// Boolean expression over name (in)equalities.
struct Guard
{
    enum class Kind { True, Not, And, Or, Eq, Neq };

    Kind kind = Kind::True;
    Symbol lhs;  // Eq / Neq
    Symbol rhs;
    std::vector<Guard> operands;  // Not: 1, And/Or: 2

    static Guard always() { return {}; }
    static Guard negate(Guard g);
    static Guard conj(Guard a, Guard b);
    static Guard disj(Guard a, Guard b);
    static Guard eq(Symbol a, Symbol b);
    static Guard neq(Symbol a, Symbol b);

    [[nodiscard]] bool is_true_literal() const { return kind == Kind::True; }
    [[nodiscard]] std::set<Name> variables() const;

    friend bool operator==(const Guard&, const Guard&) = default;
};

// Throws UnboundVariable when the guard mentions a variable β leaves unbound.
[[nodiscard]] bool eval_guard(const Guard& guard, const Binding& binding);

enum class LinkDir { Add, Remove };

// One ρ operation: when `condition` holds, add or remove v[β] from γ(v).
struct LinkOp
{
    Guard condition;
    Name variable;
    LinkDir dir = LinkDir::Add;

    friend bool operator==(const LinkOp&, const LinkOp&) = default;
};

struct Transition
{
    Guard guard;
    std::vector<LinkOp> links;

    friend bool operator==(const Transition&, const Transition&) = default;
};

// γ: V → 2^C. Variables with no links are not stored.
class Gamma
{
public:
    using Links = std::map<Name, std::set<Name>>;

    Gamma() = default;
    Gamma(std::initializer_list<std::pair<const Name, std::set<Name>>> init);

    void add(const Name& variable, const Name& constant);
    void remove(const Name& variable, const Name& constant);
    [[nodiscard]] bool contains(const Name& variable, const Name& constant) const;
    [[nodiscard]] const std::set<Name>& links(const Name& variable) const;
    [[nodiscard]] bool empty() const { return links_.empty(); }
    [[nodiscard]] std::size_t size() const;
    [[nodiscard]] const Links& entries() const { return links_; }

    [[nodiscard]] Links::const_iterator begin() const { return links_.begin(); }
    [[nodiscard]] Links::const_iterator end() const { return links_.end(); }

    friend bool operator==(const Gamma&, const Gamma&) = default;
    friend bool operator<(const Gamma& a, const Gamma& b) { return a.links_ < b.links_; }

private:
    Links links_;
};

using Marking = std::map<Name, MSet>;

// Π = (M, P', γ'). The marking has an entry (possibly empty) for every
// member of the place set.
struct Configuration
{
    Marking marking;
    std::set<Name> places;
    Gamma gamma;

    [[nodiscard]] const MSet& tokens(const Name& place) const;
    [[nodiscard]] bool has_omega() const;

    friend bool operator==(const Configuration&, const Configuration&) = default;
    friend bool operator<(const Configuration& a, const Configuration& b);
};

struct ConfigurationHash
{
    std::size_t operator()(const Configuration& c) const noexcept;
};

using ArcKey = std::pair<Name, Name>;  // (source, target)

// N = (P, T, F, γ, W, φ, ρ, M0) together with its declarations.
struct Net
{
    Name name;
    std::map<Name, unsigned> constants;  // C with arities; always contains eps
    std::set<Name> variables;            // V
    std::set<Name> places;               // P
    std::map<Name, Transition> transitions;
    std::map<ArcKey, ArcExpr> arcs;      // F together with W
    Gamma gamma0;
    Marking m0;                          // only non-empty places

    Net();

    [[nodiscard]] bool is_constant(const Name& n) const { return constants.count(n) != 0; }
    [[nodiscard]] bool is_variable(const Name& n) const { return variables.count(n) != 0; }
    [[nodiscard]] bool is_place(const Name& n) const { return places.count(n) != 0; }
    [[nodiscard]] bool is_transition(const Name& n) const { return transitions.count(n) != 0; }
    [[nodiscard]] unsigned arity(const Name& constant) const;

    [[nodiscard]] Configuration initial_configuration() const;

    friend bool operator==(const Net&, const Net&) = default;
};

// Adjacent arcs of one transition, split by direction and by real/virtual endpoint.
// Each list is ordered by place/variable name.
struct TransitionArcs
{
    std::vector<std::pair<Name, const ArcExpr*>> inputs;           // (p, t)
    std::vector<std::pair<Name, const ArcExpr*>> virtual_inputs;   // (v, t)
    std::vector<std::pair<Name, const ArcExpr*>> outputs;          // (t, p)
    std::vector<std::pair<Name, const ArcExpr*>> virtual_outputs;  // (t, v)
};

[[nodiscard]] TransitionArcs arcs_of(const Net& net, const Name& transition);

// Variables that a binding can ground from the input side of t: variables
// of input arc expressions plus virtual pre-places.
[[nodiscard]] std::set<Name> input_variables(const Net& net, const Name& transition);

} // namespace vpn
