#include "vpn/model.hpp"

#include <functional>

namespace vpn {

const Name& Symbol::resolve(const Binding& binding) const
{
    if (!variable)
        return text;
    auto it = binding.find(text);
    if (it == binding.end())
        throw UnboundVariable(text);
    return it->second;
}

ArcExpr ArcExpr::of(Pattern p, std::uint64_t n)
{
    ArcExpr e;
    e.terms.emplace(std::move(p), n);
    return e;
}

std::set<Name> ArcExpr::variables() const
{
    std::set<Name> out;
    for (const auto& [pattern, n] : terms)
        for (const auto& s : pattern)
            if (s.variable)
                out.insert(s.text);
    return out;
}

MSet ArcExpr::instantiate(const Binding& binding) const
{
    MSet out;
    for (const auto& [pattern, n] : terms) {
        Token token;
        token.reserve(pattern.size());
        for (const auto& s : pattern)
            token.push_back(s.resolve(binding));
        out.add(token, Count(n));
    }
    return out;
}

Guard Guard::negate(Guard g)
{
    Guard out;
    out.kind = Kind::Not;
    out.operands.push_back(std::move(g));
    return out;
}

Guard Guard::conj(Guard a, Guard b)
{
    Guard out;
    out.kind = Kind::And;
    out.operands.push_back(std::move(a));
    out.operands.push_back(std::move(b));
    return out;
}

Guard Guard::disj(Guard a, Guard b)
{
    Guard out;
    out.kind = Kind::Or;
    out.operands.push_back(std::move(a));
    out.operands.push_back(std::move(b));
    return out;
}

Guard Guard::eq(Symbol a, Symbol b)
{
    Guard out;
    out.kind = Kind::Eq;
    out.lhs = std::move(a);
    out.rhs = std::move(b);
    return out;
}

Guard Guard::neq(Symbol a, Symbol b)
{
    Guard out = eq(std::move(a), std::move(b));
    out.kind = Kind::Neq;
    return out;
}

std::set<Name> Guard::variables() const
{
    std::set<Name> out;
    if (kind == Kind::Eq || kind == Kind::Neq) {
        if (lhs.variable)
            out.insert(lhs.text);
        if (rhs.variable)
            out.insert(rhs.text);
    }
    for (const auto& g : operands)
        out.merge(g.variables());
    return out;
}

bool eval_guard(const Guard& guard, const Binding& binding)
{
    switch (guard.kind) {
    case Guard::Kind::True:
        return true;
    case Guard::Kind::Not:
        return !eval_guard(guard.operands.at(0), binding);
    case Guard::Kind::And:
        return eval_guard(guard.operands.at(0), binding) && eval_guard(guard.operands.at(1), binding);
    case Guard::Kind::Or:
        return eval_guard(guard.operands.at(0), binding) || eval_guard(guard.operands.at(1), binding);
    case Guard::Kind::Eq:
        return guard.lhs.resolve(binding) == guard.rhs.resolve(binding);
    case Guard::Kind::Neq:
        return guard.lhs.resolve(binding) != guard.rhs.resolve(binding);
    }
    return false;
}

Gamma::Gamma(std::initializer_list<std::pair<const Name, std::set<Name>>> init)
{
    for (const auto& [v, cs] : init)
        for (const auto& c : cs)
            add(v, c);
}

void Gamma::add(const Name& variable, const Name& constant)
{
    links_[variable].insert(constant);
}

void Gamma::remove(const Name& variable, const Name& constant)
{
    auto it = links_.find(variable);
    if (it == links_.end())
        return;
    it->second.erase(constant);
    if (it->second.empty())
        links_.erase(it);
}

bool Gamma::contains(const Name& variable, const Name& constant) const
{
    auto it = links_.find(variable);
    return it != links_.end() && it->second.count(constant) != 0;
}

const std::set<Name>& Gamma::links(const Name& variable) const
{
    static const std::set<Name> none;
    auto it = links_.find(variable);
    return it == links_.end() ? none : it->second;
}

std::size_t Gamma::size() const
{
    std::size_t n = 0;
    for (const auto& [v, cs] : links_)
        n += cs.size();
    return n;
}

const MSet& Configuration::tokens(const Name& place) const
{
    static const MSet none;
    auto it = marking.find(place);
    return it == marking.end() ? none : it->second;
}

bool Configuration::has_omega() const
{
    for (const auto& [p, m] : marking)
        if (m.has_omega())
            return true;
    return false;
}

bool operator<(const Configuration& a, const Configuration& b)
{
    if (a.marking != b.marking)
        return a.marking < b.marking;
    if (a.places != b.places)
        return a.places < b.places;
    return a.gamma < b.gamma;
}

namespace {

void mix(std::size_t& seed, std::size_t value)
{
    seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

} // namespace

std::size_t ConfigurationHash::operator()(const Configuration& c) const noexcept
{
    std::hash<std::string> h;
    std::size_t seed = 0;
    for (const auto& [place, tokens] : c.marking) {
        mix(seed, h(place));
        for (const auto& [token, n] : tokens) {
            for (const auto& part : token)
                mix(seed, h(part));
            mix(seed, n.is_omega() ? ~std::size_t{0} : static_cast<std::size_t>(n.value()));
        }
    }
    for (const auto& p : c.places)
        mix(seed, h(p));
    for (const auto& [v, cs] : c.gamma) {
        mix(seed, h(v));
        for (const auto& k : cs)
            mix(seed, h(k));
    }
    return seed;
}

Net::Net()
{
    constants.emplace(kEpsilon, 1);
}

unsigned Net::arity(const Name& constant) const
{
    auto it = constants.find(constant);
    return it == constants.end() ? 0 : it->second;
}

Configuration Net::initial_configuration() const
{
    Configuration c;
    c.places = places;
    for (const auto& p : places) {
        auto it = m0.find(p);
        c.marking.emplace(p, it == m0.end() ? MSet{} : it->second);
    }
    c.gamma = gamma0;
    return c;
}

TransitionArcs arcs_of(const Net& net, const Name& transition)
{
    TransitionArcs out;
    for (const auto& [key, weight] : net.arcs) {
        const auto& [src, dst] = key;
        if (dst == transition) {
            if (net.is_variable(src))
                out.virtual_inputs.emplace_back(src, &weight);
            else
                out.inputs.emplace_back(src, &weight);
        } else if (src == transition) {
            if (net.is_variable(dst))
                out.virtual_outputs.emplace_back(dst, &weight);
            else
                out.outputs.emplace_back(dst, &weight);
        }
    }
    // Map order on (source, target) already sorts every group by the
    // non-transition endpoint.
    return out;
}

std::set<Name> input_variables(const Net& net, const Name& transition)
{
    std::set<Name> out;
    const auto arcs = arcs_of(net, transition);
    for (const auto& [p, w] : arcs.inputs)
        out.merge(w->variables());
    for (const auto& [v, w] : arcs.virtual_inputs) {
        out.insert(v);
        out.merge(w->variables());
    }
    return out;
}

} // namespace vpn
