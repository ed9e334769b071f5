#pragma once

#include "vpn/analysis.hpp"
#include "vpn/export.hpp"

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace vpn {

struct Budgets
{
    std::size_t ct_nodes = 100000;
    std::size_t oracle_configs = 100000;
    std::size_t rt_depth = 1000;
};

struct CtStats
{
    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::size_t terminal = 0;
    std::size_t duplicate = 0;
    std::size_t distinct = 0;  // distinct configurations (CG nodes)
    bool omega = false;
};

[[nodiscard]] CtStats ct_stats(const ConfigurationTree& ct);

struct AnalysisReport
{
    BoundReport bounds;
    DeadlockReport deadlocks;
    std::map<Name, LivenessVerdict> liveness;
    std::set<Gamma> connectivity;
    LinkTuple link_tuple;
    CtStats ct;
};

// Builds the CT and CG and runs every analysis. BudgetExceeded propagates.
[[nodiscard]] AnalysisReport assemble_report(const Net& net, const Budgets& budgets = {});

[[nodiscard]] Json count_json(Count n);
[[nodiscard]] Json report_json(const AnalysisReport& r);
[[nodiscard]] std::string report_text(const AnalysisReport& r);

class StepSyntaxError : public std::invalid_argument
{
public:
    StepSyntaxError(std::size_t offset, const std::string& message)
        : std::invalid_argument("offset " + std::to_string(offset) + ": " + message), offset_(offset) {}
    // Zero-based character offset into the argument.
    [[nodiscard]] std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

// "t2[I=I_AB];t3[I=I_AB;D=f1]" -> steps. A step without brackets has the
// empty binding. Throws StepSyntaxError.
[[nodiscard]] std::vector<Step> parse_step_arg(const std::string& text);

// Interactive token game over plain text. Commands: a menu number fires
// that step, `u` undoes, `g` prints γ, `q` quits (as does end of input).
void run_stepper(const Net& net, std::istream& in, std::ostream& out, bool color = false);

} // namespace vpn
