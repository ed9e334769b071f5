#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "vpn/statespace.hpp"

#include <algorithm>

using namespace vpn;
using vpn::testing::bag;
using vpn::testing::config;
using vpn::testing::fixture;
using vpn::testing::tok;

namespace {

const std::set<Name> kNe2Places{"St1", "St2", "In", "De", "I_AB"};

// Every assignment of the transition's input variables over all constants.
std::vector<Binding> brute_force_bindings(const Net& net, const Configuration& c, const Name& t)
{
    const auto vars = input_variables(net, t);
    std::vector<Name> names(vars.begin(), vars.end());
    std::vector<Name> consts;
    for (const auto& [k, _] : net.constants)
        consts.push_back(k);

    std::vector<Binding> out;
    std::vector<std::size_t> idx(names.size(), 0);
    for (;;) {
        Binding b;
        for (std::size_t i = 0; i < names.size(); ++i)
            b[names[i]] = consts[idx[i]];
        if (is_enabled(net, c, t, b))
            out.push_back(b);
        std::size_t i = 0;
        while (i < idx.size() && ++idx[i] == consts.size())
            idx[i++] = 0;
        if (i == idx.size())
            break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

// M(p) − Σ inputs on p + Σ outputs on p, computed from the arc list alone.
Marking expected_marking(const Net& net, const Configuration& c, const Step& s, const std::set<Name>& places)
{
    Marking m;
    for (const auto& p : places)
        m[p] = c.tokens(p);
    for (const auto& [key, w] : net.arcs) {
        const auto& [src, dst] = key;
        if (dst == s.transition) {
            const Name p = net.is_variable(src) ? s.binding.at(src) : src;
            m[p] = m[p] - w.instantiate(s.binding);
        }
    }
    for (const auto& [key, w] : net.arcs) {
        const auto& [src, dst] = key;
        if (src == s.transition) {
            const Name p = net.is_variable(dst) ? s.binding.at(dst) : dst;
            m[p] = m[p] + w.instantiate(s.binding);
        }
    }
    return m;
}

// Exact reachable set, or the CT's configurations for the unbounded grower.
std::vector<Configuration> sample_configs(const Net& net)
{
    if (net.name != "Grower")
        return exact_reachability(net);
    std::vector<Configuration> out;
    for (const auto& n : build_ct(net).nodes)
        out.push_back(n.config);
    return out;
}

} // namespace

TEST_CASE("enumerate_bindings matches brute force on every reachable configuration")
{
    for (const char* name : {"ne1", "sender", "ne2", "grower"}) {
        const Net net = fixture(name);
        for (const auto& c : sample_configs(net))
            for (const auto& [t, _] : net.transitions) {
                auto fast = enumerate_bindings(net, c, t);
                std::sort(fast.begin(), fast.end());
                CHECK_MESSAGE(fast == brute_force_bindings(net, c, t), name << " " << t);
            }
    }
}

TEST_CASE("enumerated bindings are enabled and closed under single-variable changes")
{
    for (const char* name : {"ne3", "ne4"}) {
        const Net net = fixture(name);
        for (const auto& c : exact_reachability(net))
            for (const auto& [t, _] : net.transitions) {
                const auto found = enumerate_bindings(net, c, t);
                for (const auto& b : found) {
                    REQUIRE(is_enabled(net, c, t, b));
                    for (const auto& [v, _c] : b)
                        for (const auto& [k, _a] : net.constants) {
                            Binding other = b;
                            other[v] = k;
                            if (is_enabled(net, c, t, other))
                                CHECK(std::find(found.begin(), found.end(), other) != found.end());
                        }
                }
            }
    }
}

TEST_CASE("firing conserves tokens per place")
{
    for (const char* name : {"ne1", "sender", "ne2", "ne3", "ne4", "grower"}) {
        const Net net = fixture(name);
        for (const auto& c : sample_configs(net))
            for (const auto& s : enabled_set(net, c)) {
                const auto r = fire(net, c, s.transition, s.binding);
                CHECK(r.config.marking == expected_marking(net, c, s, r.config.places));

                // The event's own deltas tell the same story.
                for (const auto& p : r.config.places) {
                    MSet m = c.tokens(p);
                    if (auto it = r.event.consumed.find(p); it != r.event.consumed.end())
                        m -= it->second;
                    if (auto it = r.event.produced.find(p); it != r.event.produced.end())
                        m += it->second;
                    CHECK(m == r.config.tokens(p));
                }
            }
    }
}

TEST_CASE("structural invariants of firing")
{
    for (const char* name : {"ne1", "sender", "ne2", "ne3", "ne4"}) {
        const Net net = fixture(name);
        const Net before = net;
        for (const auto& c : exact_reachability(net))
            for (const auto& s : enabled_set(net, c)) {
                const auto r = fire(net, c, s.transition, s.binding);
                const auto arcs = arcs_of(net, s.transition);
                if (arcs.virtual_outputs.empty())
                    CHECK(r.config.places == c.places);
                if (net.transitions.at(s.transition).links.empty())
                    CHECK(r.config.gamma == c.gamma);

                std::vector<ArcKey> solid;
                for (const auto& [v, _] : arcs.virtual_inputs)
                    solid.emplace_back(s.binding.at(v), s.transition);
                for (const auto& [v, _] : arcs.virtual_outputs)
                    solid.emplace_back(s.transition, s.binding.at(v));
                auto got = r.event.solid_arcs;
                std::sort(solid.begin(), solid.end());
                std::sort(got.begin(), got.end());
                CHECK(got == solid);
                CHECK(r.config == fire(net, c, s.transition, s.binding).config);
            }
        CHECK(net == before);
    }
}

TEST_CASE("eval_guard examples")
{
    const auto R = Symbol::var("R");
    const Guard g = Guard::disj(Guard::eq(R, Symbol::constant("R1")), Guard::eq(R, Symbol::constant("R2")));
    CHECK(eval_guard(g, {{"R", "R1"}}));
    CHECK(eval_guard(Guard::always(), {}));
    const Guard h = Guard::conj(Guard::eq(Symbol::var("N"), Symbol::constant("C_A")),
                                Guard::eq(Symbol::var("RE"), Symbol::constant("REQ")));
    CHECK_FALSE(eval_guard(h, {{"N", "C_B"}, {"RE", "REQ"}}));
    CHECK(eval_guard(Guard::negate(Guard::neq(R, R)), {{"R", "x"}}));
    CHECK_THROWS_AS((void)eval_guard(g, {}), UnboundVariable);
}

TEST_CASE("enumerate_bindings examples")
{
    const Net net = fixture("ne2");
    const auto c0 = net.initial_configuration();
    CHECK(enumerate_bindings(net, c0, "t2") == std::vector<Binding>{{{"I", "I_AB"}}});
    CHECK(enumerate_bindings(net, c0, "t3").empty());
    CHECK(enumerate_bindings(net, c0, "t1") == std::vector<Binding>{{{"D", "f1"}}, {{"D", "f2"}}});
    CHECK_THROWS_AS((void)enumerate_bindings(net, c0, "t9"), UnknownTransition);
}

TEST_CASE("is_enabled examples")
{
    const Net sender = fixture("sender");
    CHECK(is_enabled(sender, sender.initial_configuration(), "t1", {{"R", "R1"}, {"D", "D1"}}));
    CHECK_FALSE(is_enabled(sender, sender.initial_configuration(), "t1", {{"R", "R1"}, {"D", "D2"}}));

    const Net ne2 = fixture("ne2");
    CHECK_FALSE(is_enabled(ne2, ne2.initial_configuration(), "t4", {{"I", "I_AB"}}));

    const std::vector<Step> sigma{{"t2", {{"I", "I_AB"}}}, {"t1", {{"D", "f1"}}}};
    const auto pi2 = fire_sequence(ne2, sigma).back();
    CHECK(is_enabled(ne2, pi2, "t3", {{"I", "I_AB"}, {"D", "f1"}}));
    CHECK_FALSE(is_enabled(ne2, pi2, "t3", {{"I", "I_AB"}, {"D", "f2"}}));
    CHECK_FALSE(is_enabled(ne2, pi2, "t3", {{"I", "I_AB"}}));  // D unbound
}

TEST_CASE("demands on one physical place are aggregated")
{
    const Net base = parse(R"(
        net Agg
        const p, a
        var V
        place p
        trans t
        arc p -> t : a
        arc V -> t : a
        gamma V { p }
        marking p { a }
    )").net;
    const Binding b{{"V", "p"}};
    CHECK_FALSE(is_enabled(base, base.initial_configuration(), "t", b));
    CHECK(enumerate_bindings(base, base.initial_configuration(), "t").empty());

    Net two = base;
    two.m0["p"].add(tok({"a"}));
    CHECK(is_enabled(two, two.initial_configuration(), "t", b));
    CHECK(fire(two, two.initial_configuration(), "t", b).config.tokens("p").empty());
}

TEST_CASE("a virtual pre-place bound to a constant that is not yet a place is not enabled")
{
    const Net net = parse(R"(
        net Ghost
        const p, q, a
        var V
        place p
        trans t
        arc V -> t : a
        arc t -> p : a
        gamma V { q }
    )").net;
    CHECK_FALSE(is_enabled(net, net.initial_configuration(), "t", {{"V", "q"}}));
    CHECK(enabled_set(net, net.initial_configuration()).empty());
}

TEST_CASE("apply_rho examples")
{
    const Net net = fixture("ne2");
    CHECK(apply_rho(net, Gamma{}, "t2", {{"I", "I_AB"}}) == Gamma{{"I", {"I_AB"}}});
    CHECK(apply_rho(net, Gamma{{"I", {"I_AB"}}}, "t4", {{"I", "I_AB"}}) == Gamma{});
    CHECK(apply_rho(net, Gamma{{"I", {"x"}}}, "t4", {{"I", "I_AB"}}) == Gamma{{"I", {"x"}}});
    CHECK(apply_rho(net, Gamma{{"I", {"x"}}}, "t1", {{"D", "f1"}}) == Gamma{{"I", {"x"}}});
}

TEST_CASE("fire examples")
{
    const Net ne2 = fixture("ne2");
    const auto r = fire(ne2, ne2.initial_configuration(), "t2", {{"I", "I_AB"}});
    CHECK(r.config == config(kNe2Places, {{"De", bag({"I_AB"})}, {"St1", bag({"f1", "f2"})}}, {{"I", {"I_AB"}}}));
    CHECK(r.event.gamma_ops == std::vector<GammaOp>{{"I", "I_AB", LinkDir::Add}});
    CHECK(r.event.solid_arcs == std::vector<ArcKey>{{"t2", "I_AB"}});
    CHECK(r.event.new_places.empty());

    const Net sender = fixture("sender");
    const auto f = fire(sender, sender.initial_configuration(), "t1", {{"R", "R1"}, {"D", "D1"}});
    Configuration pi1;
    pi1.places = {"S1", "R1"};
    pi1.marking["S1"] = MSet::single(tok({"R2", "D2"}));
    pi1.marking["R1"] = bag({"D1"});
    pi1.gamma = Gamma{{"R", {"R1"}}};
    CHECK(f.config == pi1);
    CHECK(f.event.new_places == std::set<Name>{"R1"});

    // Plain token move: no virtual arcs, true guard.
    const Net ne1 = fixture("ne1");
    const auto c0 = ne1.initial_configuration();
    const auto m = fire(ne1, c0, "t1", {{"D", "f1"}});
    CHECK(m.config.places == c0.places);
    CHECK(m.config.gamma == c0.gamma);
    CHECK(m.config.tokens("I_AB") == bag({"f1"}));

    CHECK_THROWS_AS((void)fire(ne2, ne2.initial_configuration(), "t3", {{"I", "I_AB"}, {"D", "f1"}}), NotEnabled);
}

TEST_CASE("enabled_set examples")
{
    const Net ne2 = fixture("ne2");
    CHECK(enabled_set(ne2, ne2.initial_configuration()) ==
          std::vector<Step>{{"t1", {{"D", "f1"}}}, {"t1", {{"D", "f2"}}}, {"t2", {{"I", "I_AB"}}}});
    CHECK(enabled_set(ne2, config(kNe2Places, {{"St2", bag({"f1", "f2"})}})).empty());

    const Net loop = parse("net Loop\nconst p\nplace p\ntrans t\narc p -> t : eps\narc t -> p : eps\nmarking p { eps }\n").net;
    CHECK(enabled_set(loop, loop.initial_configuration()).size() == 1);
}

TEST_CASE("fire_sequence examples")
{
    const Net ne2 = fixture("ne2");
    const std::vector<Step> sigma{{"t2", {{"I", "I_AB"}}},
                                  {"t1", {{"D", "f1"}}},
                                  {"t3", {{"I", "I_AB"}, {"D", "f1"}}},
                                  {"t4", {{"I", "I_AB"}}}};
    const auto configs = fire_sequence(ne2, sigma);
    REQUIRE(configs.size() == 5);
    CHECK(configs[4] == config(kNe2Places, {{"St1", bag({"f2"})}, {"St2", bag({"f1"})}}));
    CHECK(fire_sequence(ne2, std::vector<Step>{}) == std::vector<Configuration>{ne2.initial_configuration()});

    // t3 is never enabled again once the link is gone.
    for (const auto& c : exact_reachability(ne2, 1000))
        if (c.gamma.empty() && c.tokens("In").empty())
            CHECK(enumerate_bindings(ne2, c, "t3").empty());

    const Net sender = fixture("sender");
    const std::vector<Step> twice{{"t1", {{"R", "R1"}, {"D", "D1"}}}, {"t1", {{"R", "R2"}, {"D", "D2"}}}};
    Configuration pi2;
    pi2.places = {"S1", "R1", "R2"};
    pi2.marking = {{"S1", {}}, {"R1", bag({"D1"})}, {"R2", bag({"D2"})}};
    pi2.gamma = Gamma{{"R", {"R1", "R2"}}};
    CHECK(fire_sequence(sender, twice).back() == pi2);

    const std::vector<Step> bad{{"t2", {{"I", "I_AB"}}}, {"t4", {{"I", "I_AB"}}}, {"t3", {{"I", "I_AB"}, {"D", "f1"}}}};
    try {
        (void)fire_sequence(ne2, bad);
        FAIL("expected StepNotEnabled");
    } catch (const StepNotEnabled& e) {
        CHECK(e.index() == 2);
    }
}
