#include "vpn/semantics.hpp"

#include <functional>

namespace vpn {

namespace {

const Transition& transition_of(const Net& net, const Name& t)
{
    auto it = net.transitions.find(t);
    if (it == net.transitions.end())
        throw UnknownTransition(t);
    return it->second;
}

// Unifies `pattern` with `token` under `binding`, extending it in place.
bool unify(const Pattern& pattern, const Token& token, Binding& binding)
{
    if (pattern.size() != token.size())
        return false;
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        const Symbol& s = pattern[i];
        if (!s.variable) {
            if (s.text != token[i])
                return false;
            continue;
        }
        auto [it, inserted] = binding.emplace(s.text, token[i]);
        if (!inserted && it->second != token[i])
            return false;
    }
    return true;
}

// Candidate generation: patterns on input arcs range over the tokens of the
// place they read, virtual pre-places range over γ(v). Candidates are then
// filtered by is_enabled, which also checks multiplicities.
class BindingSearch
{
public:
    BindingSearch(const Net& net, const Configuration& config, const Name& t)
        : config_(config)
    {
        const auto arcs = arcs_of(net, t);
        for (const auto& [p, w] : arcs.inputs)
            sources_.push_back({p, false, w});
        for (const auto& [v, w] : arcs.virtual_inputs)
            sources_.push_back({v, true, w});
    }

    std::set<Binding> run()
    {
        search(0, Binding{});
        return std::move(found_);
    }

private:
    struct Source
    {
        Name name;
        bool is_virtual;
        const ArcExpr* weight;
    };

    void search(std::size_t i, const Binding& binding)
    {
        if (i == sources_.size()) {
            found_.insert(binding);
            return;
        }
        const Source& src = sources_[i];
        if (!src.is_virtual) {
            match(src.name, *src.weight, src.weight->terms.begin(), binding, i);
            return;
        }
        if (auto it = binding.find(src.name); it != binding.end()) {
            if (config_.gamma.contains(src.name, it->second))
                match(it->second, *src.weight, src.weight->terms.begin(), binding, i);
            return;
        }
        for (const auto& c : config_.gamma.links(src.name)) {
            Binding next = binding;
            next.emplace(src.name, c);
            match(c, *src.weight, src.weight->terms.begin(), next, i);
        }
    }

    void match(const Name& place, const ArcExpr& weight,
               std::map<Pattern, std::uint64_t>::const_iterator term, const Binding& binding, std::size_t i)
    {
        if (!config_.places.count(place))
            return;
        if (term == weight.terms.end()) {
            search(i + 1, binding);
            return;
        }
        for (const auto& [token, n] : config_.tokens(place)) {
            Binding next = binding;
            if (unify(term->first, token, next))
                match(place, weight, std::next(term), next, i);
        }
    }

    const Configuration& config_;
    std::vector<Source> sources_;
    std::set<Binding> found_;
};

bool arity_matches(const Net& net, const MSet& tokens, const Name& place)
{
    const unsigned arity = net.arity(place);
    for (const auto& [token, n] : tokens)
        if (token.size() != arity)
            return false;
    return true;
}

const Name* bound(const Binding& binding, const Name& variable)
{
    auto it = binding.find(variable);
    return it == binding.end() ? nullptr : &it->second;
}

} // namespace

std::vector<Binding> enumerate_bindings(const Net& net, const Configuration& config, const Name& transition)
{
    transition_of(net, transition);
    std::vector<Binding> out;
    for (auto& b : BindingSearch(net, config, transition).run())
        if (is_enabled(net, config, transition, b))
            out.push_back(b);
    return out;
}

bool is_enabled(const Net& net, const Configuration& config, const Name& transition, const Binding& binding)
{
    auto tit = net.transitions.find(transition);
    if (tit == net.transitions.end())
        return false;
    const auto arcs = arcs_of(net, transition);
    try {
        if (!eval_guard(tit->second.guard, binding))
            return false;

        // Demands are summed per physical place, whether they come from a
        // real arc or an instantiated virtual arc.
        std::map<Name, MSet> demand;
        for (const auto& [p, w] : arcs.inputs)
            if (!w->empty_set)
                demand[p] += w->instantiate(binding);
        for (const auto& [v, w] : arcs.virtual_inputs) {
            const Name* place = bound(binding, v);
            if (!place || !config.gamma.contains(v, *place) || !config.places.count(*place))
                return false;
            if (w->empty_set)
                continue;
            MSet inst = w->instantiate(binding);
            if (!arity_matches(net, inst, *place))
                return false;
            demand[*place] += inst;
        }
        for (const auto& [v, w] : arcs.virtual_outputs) {
            const Name* place = bound(binding, v);
            if (!place || !net.is_constant(*place) || net.is_transition(*place))
                return false;
            if (!w->empty_set && !arity_matches(net, w->instantiate(binding), *place))
                return false;
        }
        for (const auto& [p, w] : arcs.outputs)
            (void)w->instantiate(binding);
        for (const auto& op : tit->second.links)
            (void)eval_guard(op.condition, binding);

        for (const auto& [p, d] : demand)
            if (!leq(d, config.tokens(p)))
                return false;
        return true;
    } catch (const UnboundVariable&) {
        return false;
    }
}

Gamma apply_rho(const Net& net, const Gamma& gamma, const Name& transition, const Binding& binding)
{
    Gamma out = gamma;
    for (const auto& op : transition_of(net, transition).links) {
        if (!eval_guard(op.condition, binding))
            continue;
        const Name& c = Symbol::var(op.variable).resolve(binding);
        if (op.dir == LinkDir::Add)
            out.add(op.variable, c);
        else
            out.remove(op.variable, c);
    }
    return out;
}

Firing fire(const Net& net, const Configuration& config, const Name& transition, const Binding& binding)
{
    const Transition& tr = transition_of(net, transition);
    if (!is_enabled(net, config, transition, binding))
        throw NotEnabled("transition '" + transition + "' is not enabled under the given binding");

    const auto arcs = arcs_of(net, transition);
    Firing out{config, FiringEvent{transition, binding, {}, {}, {}, {}, {}}};
    Configuration& next = out.config;
    FiringEvent& ev = out.event;

    // Place set: instantiated virtual post-places join P with an empty marking.
    for (const auto& [v, w] : arcs.virtual_outputs) {
        const Name& place = binding.at(v);
        if (next.places.insert(place).second) {
            next.marking.emplace(place, MSet{});
            ev.new_places.insert(place);
        }
    }

    // γ, evaluated under β before any token moves.
    for (const auto& op : tr.links)
        if (eval_guard(op.condition, binding))
            ev.gamma_ops.push_back({op.variable, binding.at(op.variable), op.dir});
    next.gamma = apply_rho(net, config.gamma, transition, binding);

    // Marking balance, aggregated per physical place.
    for (const auto& [p, w] : arcs.inputs)
        ev.consumed[p] += w->instantiate(binding);
    for (const auto& [v, w] : arcs.virtual_inputs)
        if (!w->empty_set)
            ev.consumed[binding.at(v)] += w->instantiate(binding);
    for (const auto& [p, w] : arcs.outputs)
        ev.produced[p] += w->instantiate(binding);
    for (const auto& [v, w] : arcs.virtual_outputs)
        if (!w->empty_set)
            ev.produced[binding.at(v)] += w->instantiate(binding);
    std::erase_if(ev.consumed, [](const auto& kv) { return kv.second.empty(); });
    std::erase_if(ev.produced, [](const auto& kv) { return kv.second.empty(); });

    for (const auto& [p, m] : ev.consumed)
        next.marking[p] -= m;
    for (const auto& [p, m] : ev.produced)
        next.marking[p] += m;

    for (const auto& [v, w] : arcs.virtual_inputs)
        ev.solid_arcs.emplace_back(binding.at(v), transition);
    for (const auto& [v, w] : arcs.virtual_outputs)
        ev.solid_arcs.emplace_back(transition, binding.at(v));
    return out;
}

std::vector<Step> enabled_set(const Net& net, const Configuration& config)
{
    std::vector<Step> out;
    for (const auto& [t, tr] : net.transitions)
        for (auto& b : enumerate_bindings(net, config, t))
            out.push_back({t, std::move(b)});
    return out;
}

std::vector<Configuration> fire_sequence(const Net& net, std::span<const Step> steps)
{
    return fire_sequence(net, net.initial_configuration(), steps);
}

std::vector<Configuration> fire_sequence(const Net& net, const Configuration& start, std::span<const Step> steps)
{
    std::vector<Configuration> out{start};
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const Step& s = steps[i];
        if (!net.is_transition(s.transition) || !is_enabled(net, out.back(), s.transition, s.binding))
            throw StepNotEnabled(i, "step " + std::to_string(i + 1) + " ('" + s.transition + "') is not enabled");
        out.push_back(fire(net, out.back(), s.transition, s.binding).config);
    }
    return out;
}

} // namespace vpn
