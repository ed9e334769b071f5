#include "vpn/report.hpp"

#include "vpn/format.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>

namespace vpn {

CtStats ct_stats(const ConfigurationTree& ct)
{
    CtStats s;
    s.nodes = ct.nodes.size();
    s.edges = ct.edges.size();
    s.terminal = ct.count(NodeKind::Terminal);
    s.duplicate = ct.count(NodeKind::Duplicate);
    std::set<Configuration> distinct;
    for (const auto& n : ct.nodes)
        distinct.insert(n.config);
    s.distinct = distinct.size();
    s.omega = ct.has_omega();
    return s;
}

AnalysisReport assemble_report(const Net& net, const Budgets& budgets)
{
    CtOptions options;
    options.node_budget = budgets.ct_nodes;
    const auto ct = build_ct(net, options);
    const auto cg = ct_to_cg(ct);

    AnalysisReport r;
    r.bounds = net_bound(ct);
    r.deadlocks = find_deadlocks(ct);
    for (const auto& [t, _] : net.transitions)
        r.liveness.emplace(t, check_liveness(cg, t));
    r.connectivity = connectivity_set(ct);
    r.connectivity.insert(net.gamma0);
    r.link_tuple = link_tuple(cg, net.gamma0);
    r.ct = ct_stats(ct);
    return r;
}

Json count_json(Count n)
{
    return n.is_omega() ? Json("omega") : Json(n.value());
}

Json report_json(const AnalysisReport& r)
{
    Json per_place = Json::object();
    for (const auto& [p, n] : r.bounds.per_place)
        per_place[p] = count_json(n);

    Json deadlocks = Json::array();
    for (const auto& c : r.deadlocks.configurations)
        deadlocks.push_back(config_json(c));

    Json liveness = Json::object();
    for (const auto& [t, v] : r.liveness) {
        Json entry = {{"verdict", to_string(v.verdict)}};
        if (v.witness)
            entry["witness"] = *v.witness;
        liveness[t] = entry;
    }

    Json connectivity = Json::array();
    for (const auto& g : r.connectivity)
        connectivity.push_back(gamma_json(g));

    return {
        {"bounds",
         {{"perPlace", per_place},
          {"netBound", count_json(r.bounds.net_bound)},
          {"bounded", !r.bounds.net_bound.is_omega()},
          {"safe", r.bounds.safe}}},
        {"deadlocks",
         {{"count", r.deadlocks.configurations.size()},
          {"advisory", r.deadlocks.advisory},
          {"configurations", deadlocks}}},
        {"liveness", liveness},
        {"connectivity", connectivity},
        {"linkTuple",
         {{"cset", gamma_json(r.link_tuple.created)},
          {"bset", gamma_json(r.link_tuple.broken)},
          {"aset", gamma_json(r.link_tuple.maintained)}}},
        {"ct",
         {{"nodes", r.ct.nodes},
          {"edges", r.ct.edges},
          {"terminal", r.ct.terminal},
          {"duplicate", r.ct.duplicate},
          {"distinct", r.ct.distinct},
          {"omega", r.ct.omega}}},
    };
}

std::string report_text(const AnalysisReport& r)
{
    std::ostringstream out;
    out << "configuration tree: " << r.ct.nodes << " nodes, " << r.ct.edges << " edges, " << r.ct.distinct
        << " distinct configurations, " << r.ct.terminal << " terminal, " << r.ct.duplicate << " duplicate"
        << (r.ct.omega ? ", contains omega" : "") << "\n";

    out << "bound: " << r.bounds.net_bound.to_string();
    if (r.bounds.net_bound.is_omega())
        out << " (unbounded)\n";
    else
        out << (r.bounds.safe ? " (safe)\n" : " (bounded, not safe)\n");
    for (const auto& [p, n] : r.bounds.per_place)
        out << "  " << p << ": " << n.to_string() << "\n";

    out << "deadlocks: " << r.deadlocks.configurations.size()
        << (r.deadlocks.advisory ? " (advisory, omega present)" : "") << "\n";
    for (const auto& c : r.deadlocks.configurations)
        out << "  M = " << format_marking(c.marking) << ", gamma = " << format_gamma(c.gamma) << "\n";

    out << "liveness:\n";
    for (const auto& [t, v] : r.liveness) {
        out << "  " << t << ": " << to_string(v.verdict);
        if (v.witness)
            out << " (witness CG node " << *v.witness << ")";
        out << "\n";
    }

    out << "connectivity set:\n";
    for (const auto& g : r.connectivity)
        out << "  " << format_gamma(g) << "\n";

    out << "link tuple:\n"
        << "  C-set = " << format_gamma(r.link_tuple.created) << "\n"
        << "  B-set = " << format_gamma(r.link_tuple.broken) << "\n"
        << "  A-set = " << format_gamma(r.link_tuple.maintained) << "\n";
    return out.str();
}

namespace {

class StepArgParser
{
public:
    explicit StepArgParser(const std::string& text) : s_(text) {}

    std::vector<Step> run()
    {
        std::vector<Step> steps;
        skip_space();
        if (pos_ == s_.size())
            return steps;
        for (;;) {
            steps.push_back(step());
            skip_space();
            if (pos_ == s_.size())
                return steps;
            if (s_[pos_] != ';')
                throw StepSyntaxError(pos_, "expected ';' between steps");
            ++pos_;
            skip_space();
        }
    }

private:
    Step step()
    {
        Step st;
        st.transition = ident("transition name");
        skip_space();
        if (pos_ == s_.size() || s_[pos_] != '[')
            return st;
        ++pos_;
        skip_space();
        if (pos_ < s_.size() && s_[pos_] == ']') {
            ++pos_;
            return st;
        }
        for (;;) {
            const std::size_t var_at = pos_;
            Name var = ident("variable name");
            skip_space();
            if (pos_ == s_.size() || s_[pos_] != '=')
                throw StepSyntaxError(pos_, "expected '=' after '" + var + "'");
            const std::size_t eq_at = pos_++;
            skip_space();
            if (pos_ == s_.size() || !is_ident_char(s_[pos_]))
                throw StepSyntaxError(eq_at, "missing value after '='");
            Name value = ident("constant");
            if (!st.binding.emplace(var, value).second)
                throw StepSyntaxError(var_at, "variable '" + var + "' bound twice");
            skip_space();
            if (pos_ == s_.size())
                throw StepSyntaxError(pos_, "unterminated binding, expected ']'");
            if (s_[pos_] == ']') {
                ++pos_;
                return st;
            }
            if (s_[pos_] != ';' && s_[pos_] != ',')
                throw StepSyntaxError(pos_, "expected ';' or ']' in binding");
            ++pos_;
            skip_space();
        }
    }

    static bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

    Name ident(const char* what)
    {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && is_ident_char(s_[pos_]))
            ++pos_;
        if (start == pos_)
            throw StepSyntaxError(start, std::string("expected ") + what);
        return s_.substr(start, pos_ - start);
    }

    void skip_space()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

} // namespace

std::vector<Step> parse_step_arg(const std::string& text)
{
    return StepArgParser(text).run();
}

void run_stepper(const Net& net, std::istream& in, std::ostream& out, bool color)
{
    const auto bold = [color](const std::string& s) { return color ? "\033[1m" + s + "\033[0m" : s; };

    std::vector<Configuration> history{net.initial_configuration()};
    std::vector<Step> fired;
    bool show = true;
    for (;;) {
        const Configuration& current = history.back();
        const auto enabled = enabled_set(net, current);
        if (show) {
            out << bold("step " + std::to_string(fired.size())) << "\n" << format_config(current) << "\n";
            if (enabled.empty())
                out << "terminal configuration: no enabled steps\n";
            for (std::size_t i = 0; i < enabled.size(); ++i)
                out << "  " << i + 1 << ") " << format_step(enabled[i]) << "\n";
        }
        show = true;
        out << "> " << std::flush;

        std::string line;
        if (!std::getline(in, line))
            break;
        std::istringstream words(line);
        std::string cmd;
        words >> cmd;
        if (cmd.empty()) {
            show = false;
            continue;
        }
        if (cmd == "q")
            break;
        if (cmd == "g") {
            out << "gamma = " << format_gamma(current.gamma) << "\n";
            show = false;
        } else if (cmd == "u") {
            if (fired.empty()) {
                out << "already at the initial configuration\n";
                show = false;
            } else {
                out << "undo " << format_step(fired.back()) << "\n";
                history.pop_back();
                fired.pop_back();
            }
        } else if (std::all_of(cmd.begin(), cmd.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
            const std::size_t choice = std::stoul(cmd);
            if (choice == 0 || choice > enabled.size()) {
                out << "no step numbered " << cmd << "\n";
                show = false;
                continue;
            }
            const Step& s = enabled[choice - 1];
            auto result = fire(net, current, s.transition, s.binding);
            out << "fired " << format_step(s) << "\n";
            fired.push_back(s);
            history.push_back(std::move(result.config));
        } else {
            out << "commands: <number> fire, u undo, g gamma, q quit\n";
            show = false;
        }
    }
}

} // namespace vpn
