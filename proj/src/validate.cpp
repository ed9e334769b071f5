#include "vpn/validate.hpp"

namespace vpn {

std::string arc_subject(const Name& source, const Name& target)
{
    return "arc:" + source + "->" + target;
}

namespace {

class Checker
{
public:
    explicit Checker(const Net& net) : net_(net) {}

    std::vector<Violation> run()
    {
        check_declarations();
        check_arcs();
        check_transitions();
        check_gamma();
        check_marking();
        return std::move(out_);
    }

private:
    void report(std::string code, std::string message, std::string subject)
    {
        out_.push_back({std::move(code), std::move(message), std::move(subject)});
    }

    void check_symbol(const Symbol& s, const std::string& subject)
    {
        const bool declared = s.variable ? net_.is_variable(s.text) : net_.is_constant(s.text);
        if (!declared)
            report("undeclared-name",
                   std::string(s.variable ? "undeclared variable '" : "undeclared constant '") + s.text + "'",
                   subject);
    }

    void check_guard_symbols(const Guard& g, const std::string& subject)
    {
        if (g.kind == Guard::Kind::Eq || g.kind == Guard::Kind::Neq) {
            check_symbol(g.lhs, subject);
            check_symbol(g.rhs, subject);
        }
        for (const auto& op : g.operands)
            check_guard_symbols(op, subject);
    }

    void check_declarations()
    {
        for (const auto& v : net_.variables)
            if (net_.is_constant(v))
                report("name-clash", "'" + v + "' is declared both constant and variable", "var:" + v);
        for (const auto& [c, arity] : net_.constants)
            if (arity == 0)
                report("arity-mismatch", "constant '" + c + "' has arity 0", "const:" + c);
        for (const auto& p : net_.places)
            if (!net_.is_constant(p))
                report("place-not-constant", "place '" + p + "' is not a declared constant", "place:" + p);
        for (const auto& [t, tr] : net_.transitions) {
            if (net_.is_place(t))
                report("place-transition-overlap", "'" + t + "' is both a place and a transition", "trans:" + t);
            else if (net_.is_constant(t) || net_.is_variable(t))
                report("place-transition-overlap", "transition '" + t + "' collides with a declared name",
                       "trans:" + t);
        }
    }

    void check_arcs()
    {
        for (const auto& [key, weight] : net_.arcs) {
            const auto& [src, dst] = key;
            const auto subject = arc_subject(src, dst);
            const bool src_t = net_.is_transition(src);
            const bool dst_t = net_.is_transition(dst);
            if (src_t == dst_t) {
                report("invalid-arc", "arc " + src + " -> " + dst + " must join a transition and a place",
                       subject);
                continue;
            }
            const Name& other = src_t ? dst : src;
            const bool is_virtual = net_.is_variable(other);
            if (!is_virtual && !net_.is_place(other)) {
                report("invalid-arc", "'" + other + "' is neither a place nor a variable", subject);
                continue;
            }
            if (weight.empty_set) {
                if (!is_virtual || !src_t)
                    report("empty-weight", "empty weight is only allowed on a virtual output arc", subject);
                continue;
            }
            if (weight.terms.empty())
                report("empty-weight", "arc weight has no terms", subject);
            for (const auto& [pattern, n] : weight.terms) {
                if (n == 0)
                    report("arity-mismatch", "zero multiplicity in arc weight", subject);
                if (pattern.empty())
                    report("arity-mismatch", "empty tuple in arc weight", subject);
                for (const auto& s : pattern)
                    check_symbol(s, subject);
                if (!is_virtual && pattern.size() != net_.arity(other))
                    report("arity-mismatch",
                           "pattern of length " + std::to_string(pattern.size()) + " on place '" + other +
                               "' of arity " + std::to_string(net_.arity(other)),
                           subject);
            }
        }
    }

    void check_transitions()
    {
        for (const auto& [t, tr] : net_.transitions) {
            const auto subject = "trans:" + t;
            const auto arcs = arcs_of(net_, t);
            const auto grounded = input_variables(net_, t);

            for (const auto& [v, w] : arcs.virtual_outputs)
                if (!grounded.count(v))
                    report("ungrounded-virtual-post-place",
                           "ungrounded virtual post-place '" + v + "' of transition '" + t + "'",
                           arc_subject(t, v));
            auto check_out = [&](const Name& target, const ArcExpr* w) {
                for (const auto& v : w->variables())
                    if (!grounded.count(v))
                        report("ungrounded-output-variable",
                               "output variable '" + v + "' of transition '" + t + "' is not bound by its inputs",
                               arc_subject(t, target));
            };
            for (const auto& [p, w] : arcs.outputs)
                check_out(p, w);
            for (const auto& [v, w] : arcs.virtual_outputs)
                check_out(v, w);

            check_guard_symbols(tr.guard, subject);
            for (const auto& v : tr.guard.variables())
                if (!grounded.count(v))
                    report("guard-variable-out-of-scope",
                           "guard variable out of scope: '" + v + "' in transition '" + t + "'", subject);

            for (const auto& op : tr.links) {
                check_guard_symbols(op.condition, subject);
                if (!net_.is_variable(op.variable))
                    report("undeclared-name", "link targets undeclared variable '" + op.variable + "'", subject);
                else if (!net_.arcs.count({t, op.variable}))
                    report("link-without-virtual-arc",
                           "link on '" + op.variable + "' but transition '" + t + "' has no arc to it", subject);
                for (const auto& v : op.condition.variables())
                    if (!grounded.count(v))
                        report("guard-variable-out-of-scope",
                               "link condition variable out of scope: '" + v + "' in transition '" + t + "'",
                               subject);
            }
        }
    }

    void check_gamma()
    {
        for (const auto& [v, cs] : net_.gamma0) {
            if (!net_.is_variable(v))
                report("undeclared-name", "gamma key '" + v + "' is not a declared variable", "gamma:" + v);
            for (const auto& c : cs)
                if (!net_.is_constant(c))
                    report("undeclared-name", "gamma member '" + c + "' is not a declared constant", "gamma:" + v);
        }
    }

    void check_marking()
    {
        for (const auto& [p, tokens] : net_.m0) {
            const auto subject = "marking:" + p;
            if (!net_.is_place(p)) {
                report("invalid-marking", "marking of non-place '" + p + "'", subject);
                continue;
            }
            for (const auto& [token, n] : tokens) {
                if (token.size() != net_.arity(p))
                    report("arity-mismatch",
                           "token of length " + std::to_string(token.size()) + " in place '" + p + "' of arity " +
                               std::to_string(net_.arity(p)),
                           subject);
                for (const auto& c : token)
                    if (!net_.is_constant(c))
                        report("undeclared-name", "undeclared constant '" + c + "'", subject);
            }
        }
    }

    const Net& net_;
    std::vector<Violation> out_;
};

} // namespace

std::vector<Violation> validate_net(const Net& net)
{
    return Checker(net).run();
}

} // namespace vpn
