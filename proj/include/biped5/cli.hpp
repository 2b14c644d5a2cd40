#pragma once

#include <iosfwd>

namespace biped5 {

// Entry point of the `biped5` tool: generate | simulate | validate | render.
// Returns the process exit code; diagnostics go to err.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace biped5
