#pragma once

#include "vpn/model.hpp"

#include <string>
#include <vector>

namespace vpn {

// A structural defect of a net. `subject` names the offending declaration
// ("trans:t1", "arc:St1->t1", "place:p", "marking:p", "gamma:v", "const:c",
// "var:v") so front ends can map it back to source positions.
struct Violation
{
    std::string code;
    std::string message;
    std::string subject;

    friend bool operator==(const Violation&, const Violation&) = default;
};

[[nodiscard]] std::string arc_subject(const Name& source, const Name& target);

// Reports every violation found; an empty result means the net is well formed.
[[nodiscard]] std::vector<Violation> validate_net(const Net& net);

} // namespace vpn
