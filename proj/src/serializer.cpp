#include "vpn/dsl.hpp"

#include <sstream>

namespace vpn {

namespace {

std::string format_tuple(const std::vector<Name>& parts)
{
    if (parts.size() == 1)
        return parts.front();
    std::string out = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i)
            out += ",";
        out += parts[i];
    }
    return out + ")";
}

std::string format_pattern(const Pattern& p)
{
    std::vector<Name> parts;
    for (const auto& s : p)
        parts.push_back(s.text);
    return format_tuple(parts);
}

bool is_kind(const Guard& g, Guard::Kind k) { return g.kind == k; }

std::string wrap(const std::string& s, bool parens) { return parens ? "(" + s + ")" : s; }

template <typename Range>
std::string join(const Range& items, const char* sep)
{
    std::string out;
    for (const auto& item : items) {
        if (!out.empty())
            out += sep;
        out += item;
    }
    return out;
}

} // namespace

// Parenthesizes only where the left-associative grammar would otherwise
// regroup the tree.
std::string format_guard(const Guard& g)
{
    using K = Guard::Kind;
    switch (g.kind) {
    case K::True:
        return "true";
    case K::Eq:
        return g.lhs.text + " == " + g.rhs.text;
    case K::Neq:
        return g.lhs.text + " != " + g.rhs.text;
    case K::Not: {
        const Guard& x = g.operands[0];
        return "!" + wrap(format_guard(x), !is_kind(x, K::True) && !is_kind(x, K::Not));
    }
    case K::And: {
        const Guard& l = g.operands[0];
        const Guard& r = g.operands[1];
        return wrap(format_guard(l), is_kind(l, K::Or)) + " && " +
               wrap(format_guard(r), is_kind(r, K::And) || is_kind(r, K::Or));
    }
    case K::Or: {
        const Guard& r = g.operands[1];
        return format_guard(g.operands[0]) + " || " + wrap(format_guard(r), is_kind(r, K::Or));
    }
    }
    return "true";
}

std::string format_weight(const ArcExpr& w)
{
    if (w.empty_set)
        return "empty";
    std::vector<std::string> terms;
    for (const auto& [pattern, n] : w.terms)
        terms.push_back(n == 1 ? format_pattern(pattern) : std::to_string(n) + "*" + format_pattern(pattern));
    return join(terms, " + ");
}

std::string format_link(const LinkOp& op)
{
    return format_guard(op.condition) + (op.dir == LinkDir::Add ? " => +" : " => -") + op.variable;
}

std::string serialize(const Net& net)
{
    std::ostringstream out;
    out << "net " << net.name << "\n";

    std::vector<std::string> consts;
    for (const auto& [c, arity] : net.constants)
        if (c != kEpsilon)
            consts.push_back(arity == 1 ? c : c + "/" + std::to_string(arity));
    if (!consts.empty())
        out << "const " << join(consts, ", ") << "\n";
    if (!net.variables.empty())
        out << "var " << join(net.variables, ", ") << "\n";
    if (!net.places.empty())
        out << "place " << join(net.places, ", ") << "\n";

    for (const auto& [name, t] : net.transitions) {
        out << "trans " << name;
        if (!t.guard.is_true_literal())
            out << " guard " << format_guard(t.guard);
        if (!t.links.empty()) {
            std::vector<std::string> clauses;
            for (const auto& op : t.links)
                clauses.push_back(format_link(op));
            out << " link " << join(clauses, ", ");
        }
        out << "\n";
    }
    for (const auto& [key, w] : net.arcs)
        out << "arc " << key.first << " -> " << key.second << " : " << format_weight(w) << "\n";
    for (const auto& [v, cs] : net.gamma0)
        out << "gamma " << v << " { " << join(cs, ", ") << " }\n";
    for (const auto& [p, tokens] : net.m0) {
        if (tokens.empty())
            continue;
        std::vector<std::string> items;
        for (const auto& [token, n] : tokens)
            for (std::uint64_t i = 0; i < n.value(); ++i)
                items.push_back(format_tuple(token));
        out << "marking " << p << " { " << join(items, ", ") << " }\n";
    }
    return out.str();
}

} // namespace vpn
