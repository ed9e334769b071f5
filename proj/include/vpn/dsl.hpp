#pragma once

#include "vpn/model.hpp"

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vpn {

// 1-based position of a diagnostic in the source text.
struct SourceSpan
{
    std::size_t line = 1;
    std::size_t column = 1;
    std::size_t length = 0;

    friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

struct Diagnostic
{
    SourceSpan span;
    std::string message;
};

[[nodiscard]] std::string to_string(const Diagnostic& d);

class ParseError : public std::runtime_error
{
public:
    explicit ParseError(std::vector<Diagnostic> diagnostics);
    [[nodiscard]] const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

private:
    std::vector<Diagnostic> diagnostics_;
};

// A parsed `.vpn` file. `spans` is keyed like Violation::subject
// ("net", "trans:t1", "arc:St1->t1", ...).
struct NetDocument
{
    Net net;
    std::map<std::string, SourceSpan> spans;
};

// Parses and validates. Throws ParseError carrying every diagnostic found;
// a returned document always passes validate_net.
[[nodiscard]] NetDocument parse(std::string_view text);

// Canonical text: declarations sorted by name, one per line.
[[nodiscard]] std::string serialize(const Net& net);

[[nodiscard]] std::string format_guard(const Guard& guard);
[[nodiscard]] std::string format_weight(const ArcExpr& weight);
[[nodiscard]] std::string format_link(const LinkOp& op);

} // namespace vpn
