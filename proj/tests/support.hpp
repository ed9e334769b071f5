#pragma once

#include "vpn/dsl.hpp"
#include "vpn/semantics.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#ifndef VPN_FIXTURE_DIR
#error "VPN_FIXTURE_DIR must point at the fixtures directory"
#endif

namespace vpn::testing {

inline const char* const kFixtures[] = {"ne1", "sender", "ne2", "ne3", "ne4"};

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string fixture_path(const std::string& name)
{
    return std::string(VPN_FIXTURE_DIR) + "/" + name + ".vpn";
}

inline Net fixture(const std::string& name)
{
    return parse(read_file(fixture_path(name))).net;
}

inline Token tok(std::initializer_list<const char*> parts)
{
    Token t;
    for (const char* p : parts)
        t.emplace_back(p);
    return t;
}

// Multiset of bare constants, each with count 1 unless repeated.
inline MSet bag(std::initializer_list<const char*> names)
{
    MSet m;
    for (const char* n : names)
        m.add(Token{n});
    return m;
}

// Configuration over `places` with the given non-empty place contents.
inline Configuration config(std::set<Name> places, std::map<Name, MSet> tokens, Gamma gamma = {})
{
    Configuration c;
    c.places = std::move(places);
    for (const auto& p : c.places)
        c.marking[p];
    for (auto& [p, m] : tokens)
        c.marking[p] = std::move(m);
    c.gamma = std::move(gamma);
    return c;
}

// Random structurally valid net. Every generated net passes validate_net.
class NetGenerator
{
public:
    explicit NetGenerator(std::uint64_t seed) : rng_(seed) {}

    Net next()
    {
        Net net;
        net.name = "R" + std::to_string(pick(0, 999));

        const int n_const = pick(2, 6);
        const int n_place = pick(1, 4);
        const int n_var = pick(1, 4);
        for (int i = 0; i < n_const; ++i)
            net.constants["c" + std::to_string(i)] = 1;
        for (int i = 0; i < n_place; ++i) {
            const Name p = "p" + std::to_string(i);
            net.constants[p] = static_cast<unsigned>(pick(1, 3));
            net.places.insert(p);
        }
        for (int i = 0; i < n_var; ++i)
            net.variables.insert("V" + std::to_string(i));

        const int n_trans = pick(0, 4);
        for (int i = 0; i < n_trans; ++i)
            add_transition(net, "t" + std::to_string(i));

        for (const auto& v : net.variables)
            if (coin())
                for (int k = pick(1, 2); k > 0; --k)
                    net.gamma0.add(v, any_of(constants(net)));
        for (const auto& p : net.places)
            if (coin())
                for (int k = pick(1, 3); k > 0; --k) {
                    Token t;
                    for (unsigned j = 0; j < net.arity(p); ++j)
                        t.push_back(any_of(constants(net)));
                    net.m0[p].add(t);
                }
        return net;
    }

private:
    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin() { return pick(0, 1) == 1; }

    template <typename C>
    typename C::value_type any_of(const C& items)
    {
        auto it = items.begin();
        std::advance(it, pick(0, static_cast<int>(items.size()) - 1));
        return *it;
    }

    static std::vector<Name> constants(const Net& net)
    {
        std::vector<Name> out;
        for (const auto& [c, _] : net.constants)
            out.push_back(c);
        return out;
    }

    Symbol symbol(const Net& net, const std::vector<Name>& vars)
    {
        if (!vars.empty() && coin())
            return Symbol::var(any_of(vars));
        return Symbol::constant(any_of(constants(net)));
    }

    ArcExpr weight(const Net& net, std::size_t len, const std::vector<Name>& vars)
    {
        ArcExpr w;
        for (int k = pick(1, 2); k > 0; --k) {
            Pattern p;
            for (std::size_t j = 0; j < len; ++j)
                p.push_back(symbol(net, vars));
            w.terms[p] += static_cast<std::uint64_t>(pick(1, 3));
        }
        return w;
    }

    Guard guard(const std::vector<Name>& vars, const Net& net, int depth)
    {
        const int choice = depth > 2 ? pick(0, 1) : pick(0, 5);
        switch (choice) {
        case 0: return Guard::always();
        case 1: return coin() ? Guard::eq(symbol(net, vars), symbol(net, vars))
                              : Guard::neq(symbol(net, vars), symbol(net, vars));
        case 2: return Guard::negate(guard(vars, net, depth + 1));
        case 3: return Guard::conj(guard(vars, net, depth + 1), guard(vars, net, depth + 1));
        default: return Guard::disj(guard(vars, net, depth + 1), guard(vars, net, depth + 1));
        }
    }

    void add_transition(Net& net, const Name& t)
    {
        std::vector<Name> all_vars(net.variables.begin(), net.variables.end());
        Transition tr;

        // Input side first; it decides which variables are in scope.
        std::set<Name> scope;
        for (const auto& p : net.places)
            if (coin()) {
                ArcExpr w = weight(net, net.arity(p), all_vars);
                for (const auto& v : w.variables())
                    scope.insert(v);
                net.arcs[{p, t}] = std::move(w);
            }
        for (const auto& v : net.variables)
            if (pick(0, 3) == 0) {
                ArcExpr w = weight(net, static_cast<std::size_t>(pick(1, 2)), all_vars);
                for (const auto& x : w.variables())
                    scope.insert(x);
                scope.insert(v);
                net.arcs[{v, t}] = std::move(w);
            }
        std::vector<Name> in_scope(scope.begin(), scope.end());

        for (const auto& p : net.places)
            if (coin())
                net.arcs[{t, p}] = weight(net, net.arity(p), in_scope);
        std::vector<Name> posts;
        for (const auto& v : in_scope)
            if (coin()) {
                net.arcs[{t, v}] = coin() ? ArcExpr::empty() : weight(net, 1, in_scope);
                posts.push_back(v);
            }

        tr.guard = guard(in_scope, net, 0);
        for (const auto& v : posts)
            if (coin())
                tr.links.push_back({guard(in_scope, net, 1), v, coin() ? LinkDir::Add : LinkDir::Remove});
        net.transitions[t] = std::move(tr);
    }

    std::mt19937_64 rng_;
};

} // namespace vpn::testing

#include <cstdio>
#include <sys/wait.h>

namespace vpn::testing {

struct RunResult
{
    int status = -1;
    std::string out;
};

// Runs a shell command, capturing stdout; stderr is discarded.
inline RunResult run(const std::string& command)
{
    RunResult r;
    FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
    if (!pipe)
        return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0)
        r.out.append(buf, n);
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

#ifdef VPN_BINARY
inline RunResult run_vpn(const std::string& args)
{
    return run(std::string("VPN_COLOR=0 '") + VPN_BINARY + "' " + args);
}
#endif

} // namespace vpn::testing
