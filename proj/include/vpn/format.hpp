#pragma once

#include "vpn/semantics.hpp"

#include <string>

namespace vpn {

// Human-readable renderings used by the CLI and the stepper.

[[nodiscard]] std::string format_token(const Token& token);
// "{f1, 2*f2, omega*eps}"
[[nodiscard]] std::string format_mset(const MSet& m);
// "{St1{f1, f2}, In{I_AB}}"; empty places are omitted.
[[nodiscard]] std::string format_marking(const Marking& m);
// "NULL" or "{I -> {I_AB}}"
[[nodiscard]] std::string format_gamma(const Gamma& g);
[[nodiscard]] std::string format_binding(const Binding& b);
[[nodiscard]] std::string format_config(const Configuration& c);
// "t2 [I=I_AB]"
[[nodiscard]] std::string format_step(const Step& s);

} // namespace vpn
