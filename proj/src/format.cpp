#include "vpn/format.hpp"

namespace vpn {

namespace {

template <typename Range, typename F>
std::string join(const Range& items, F&& render)
{
    std::string out;
    bool first = true;
    for (const auto& item : items) {
        if (!first)
            out += ", ";
        first = false;
        out += render(item);
    }
    return out;
}

} // namespace

std::string format_token(const Token& token)
{
    if (token.size() == 1)
        return token.front();
    return "(" + join(token, [](const Name& n) { return n; }) + ")";
}

std::string format_mset(const MSet& m)
{
    return "{" + join(m, [](const auto& entry) {
               const auto& [token, n] = entry;
               return n == Count(1) ? format_token(token) : n.to_string() + "*" + format_token(token);
           }) + "}";
}

std::string format_marking(const Marking& m)
{
    std::string out;
    for (const auto& [p, tokens] : m) {
        if (tokens.empty())
            continue;
        if (!out.empty())
            out += ", ";
        out += p + format_mset(tokens);
    }
    return "{" + out + "}";
}

std::string format_gamma(const Gamma& g)
{
    if (g.empty())
        return "NULL";
    return "{" + join(g, [](const auto& entry) {
               return entry.first + " -> {" + join(entry.second, [](const Name& c) { return c; }) + "}";
           }) + "}";
}

std::string format_binding(const Binding& b)
{
    std::string out;
    for (const auto& [v, c] : b) {
        if (!out.empty())
            out += ";";
        out += v + "=" + c;
    }
    return out;
}

std::string format_config(const Configuration& c)
{
    return "M = " + format_marking(c.marking) + "\nP = {" + join(c.places, [](const Name& p) { return p; }) +
           "}\ngamma = " + format_gamma(c.gamma);
}

std::string format_step(const Step& s)
{
    return s.transition + " [" + format_binding(s.binding) + "]";
}

} // namespace vpn
