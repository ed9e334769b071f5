#include "vpn/dsl.hpp"
#include "vpn/export.hpp"
#include "vpn/format.hpp"
#include "vpn/report.hpp"
#include "vpn/session.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unistd.h>

namespace {

enum Exit { kOk = 0, kInvalid = 2, kBudget = 3, kNotEnabled = 4 };

struct Failure
{
    int code;
};

bool color_enabled()
{
    const char* env = std::getenv("VPN_COLOR");
    if (env && std::string(env) == "0")
        return false;
    return isatty(STDOUT_FILENO) != 0;
}

vpn::NetDocument load(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        std::cerr << path << ": cannot open file\n";
        throw Failure{kInvalid};
    }
    std::stringstream text;
    text << in.rdbuf();
    try {
        return vpn::parse(text.str());
    } catch (const vpn::ParseError& e) {
        for (const auto& d : e.diagnostics())
            std::cerr << path << ":" << vpn::to_string(d) << "\n";
        throw Failure{kInvalid};
    }
}

vpn::ConfigurationTree checked_ct(const vpn::Net& net, std::size_t budget)
{
    vpn::CtOptions options;
    options.node_budget = budget;
    try {
        return vpn::build_ct(net, options);
    } catch (const vpn::BudgetExceeded& e) {
        std::cerr << "vpn: " << e.what() << " (" << e.partial().nodes.size() << " nodes built)\n";
        throw Failure{kBudget};
    }
}

int cmd_validate(const std::string& file)
{
    const auto doc = load(file);
    const auto& n = doc.net;
    std::cout << "net " << n.name << " is valid: " << n.places.size() << " places, " << n.variables.size()
              << " variables, " << n.transitions.size() << " transitions, " << n.arcs.size() << " arcs\n";
    return kOk;
}

int cmd_net(const std::string& file, const std::string& format)
{
    const auto doc = load(file);
    if (format == "dot")
        std::cout << vpn::net_dot(doc.net);
    else if (format == "json")
        std::cout << vpn::net_json(doc.net).dump(2) << "\n";
    else
        std::cout << vpn::serialize(doc.net);
    return kOk;
}

int cmd_enabled(const std::string& file, bool json)
{
    const auto doc = load(file);
    const auto steps = vpn::enabled_set(doc.net, doc.net.initial_configuration());
    if (json) {
        std::cout << vpn::steps_json(steps).dump(2) << "\n";
    } else {
        for (const auto& s : steps)
            std::cout << vpn::format_step(s) << "\n";
    }
    return kOk;
}

int cmd_fire(const std::string& file, const std::string& seq, bool json)
{
    const auto doc = load(file);
    std::vector<vpn::Step> steps;
    try {
        steps = vpn::parse_step_arg(seq);
    } catch (const vpn::StepSyntaxError& e) {
        std::cerr << "vpn: --seq: " << e.what() << "\n";
        return kInvalid;
    }

    std::vector<vpn::Configuration> configs{doc.net.initial_configuration()};
    std::vector<vpn::FiringEvent> events;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const auto& s = steps[i];
        if (!doc.net.is_transition(s.transition) || !vpn::is_enabled(doc.net, configs.back(), s.transition, s.binding)) {
            std::cerr << "vpn: step " << i + 1 << " (" << vpn::format_step(s) << ") is not enabled\n";
            return kNotEnabled;
        }
        auto r = vpn::fire(doc.net, configs.back(), s.transition, s.binding);
        configs.push_back(std::move(r.config));
        events.push_back(std::move(r.event));
    }

    if (json) {
        vpn::Json out = {{"configurations", vpn::Json::array()}, {"events", vpn::Json::array()}};
        for (const auto& c : configs)
            out["configurations"].push_back(vpn::config_json(c));
        for (const auto& e : events)
            out["events"].push_back(vpn::event_json(e));
        std::cout << out.dump(2) << "\n";
        return kOk;
    }
    const bool color = color_enabled();
    for (std::size_t i = 0; i < configs.size(); ++i) {
        std::string head = "Pi" + std::to_string(i);
        if (i > 0)
            head += " after " + vpn::format_step(steps[i - 1]);
        std::cout << (color ? "\033[1m" + head + "\033[0m" : head) << "\n" << vpn::format_config(configs[i]) << "\n";
    }
    return kOk;
}

int cmd_ct(const std::string& file, const std::string& format, std::size_t budget, bool graph)
{
    const auto doc = load(file);
    const auto ct = checked_ct(doc.net, budget);
    if (graph) {
        const auto cg = vpn::ct_to_cg(ct);
        std::cout << (format == "dot" ? vpn::graph_dot(cg) : vpn::graph_json(cg).dump(2) + "\n");
    } else {
        std::cout << (format == "dot" ? vpn::tree_dot(ct) : vpn::tree_json(ct).dump(2) + "\n");
    }
    return kOk;
}

int cmd_analyze(const std::string& file, bool json, std::size_t budget)
{
    const auto doc = load(file);
    vpn::Budgets budgets;
    budgets.ct_nodes = budget;
    vpn::AnalysisReport report;
    try {
        report = vpn::assemble_report(doc.net, budgets);
    } catch (const vpn::BudgetExceeded& e) {
        const auto stats = vpn::ct_stats(e.partial());
        std::cerr << "vpn: " << e.what() << " (partial tree: " << stats.nodes << " nodes, " << stats.terminal
                  << " terminal" << (stats.omega ? ", contains omega" : "") << ")\n";
        return kBudget;
    }
    if (json)
        std::cout << vpn::report_json(report).dump(2) << "\n";
    else
        std::cout << "net " << doc.net.name << "\n" << vpn::report_text(report);
    return kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Variable Petri net engine: validation, firing, state spaces and analysis"};
    app.require_subcommand(1);

    std::string file, format = "json", seq;
    bool json = false;
    std::size_t max_nodes = 100000;
    vpn::ServeOptions serve;

    auto* validate = app.add_subcommand("validate", "parse and validate a net");
    validate->add_option("FILE", file)->required();

    auto* net = app.add_subcommand("net", "print a net as canonical text, DOT or JSON");
    net->add_option("FILE", file)->required();
    net->add_option("--format", format, "text|dot|json")->check(CLI::IsMember({"text", "dot", "json"}));

    auto* enabled = app.add_subcommand("enabled", "list enabled (transition, binding) pairs at the initial configuration");
    enabled->add_option("FILE", file)->required();
    enabled->add_flag("--json", json);

    auto* fire = app.add_subcommand("fire", "fire a sequence of steps from the initial configuration");
    fire->add_option("FILE", file)->required();
    fire->add_option("--seq", seq, "e.g. \"t2[I=I_AB];t1[D=f1]\"")->required();
    fire->add_flag("--json", json);

    auto* ct = app.add_subcommand("ct", "build the configuration tree");
    ct->add_option("FILE", file)->required();
    ct->add_option("--format", format, "dot|json")->check(CLI::IsMember({"dot", "json"}));
    ct->add_option("--max-nodes", max_nodes, "node budget")->check(CLI::PositiveNumber);

    auto* cg = app.add_subcommand("cg", "build the configuration graph");
    cg->add_option("FILE", file)->required();
    cg->add_option("--format", format, "dot|json")->check(CLI::IsMember({"dot", "json"}));
    cg->add_option("--max-nodes", max_nodes, "node budget")->check(CLI::PositiveNumber);

    auto* analyze = app.add_subcommand("analyze", "bounds, deadlocks, liveness and link analysis");
    analyze->add_option("FILE", file)->required();
    analyze->add_flag("--json", json);
    analyze->add_option("--max-nodes", max_nodes, "node budget")->check(CLI::PositiveNumber);

    auto* step = app.add_subcommand("step", "interactive token game on stdin/stdout");
    step->add_option("FILE", file)->required();

    auto* srv = app.add_subcommand("serve", "run the HTTP session service");
    srv->add_option("--port", serve.port, "listen port")->check(CLI::Range(1, 65535));
    srv->add_option("--bind", serve.bind, "listen address");
    srv->add_option("--cors-origin", serve.cors_origin, "Access-Control-Allow-Origin value, empty to disable");
    srv->add_option("--ui", serve.static_dir, "directory of static UI assets to serve at /");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kInvalid;
    }

    try {
        if (*validate)
            return cmd_validate(file);
        if (*net)
            return cmd_net(file, net->count("--format") ? format : "text");
        if (*enabled)
            return cmd_enabled(file, json);
        if (*fire)
            return cmd_fire(file, seq, json);
        if (*ct)
            return cmd_ct(file, format, max_nodes, false);
        if (*cg)
            return cmd_ct(file, format, max_nodes, true);
        if (*analyze)
            return cmd_analyze(file, json, max_nodes);
        if (*step) {
            const auto doc = load(file);
            vpn::run_stepper(doc.net, std::cin, std::cout, color_enabled());
            return kOk;
        }
        if (*srv)
            return vpn::serve(serve) ? kOk : 1;
    } catch (const Failure& f) {
        return f.code;
    }
    return kOk;
}
