#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eprgame {

// Runs one CLI invocation with argv-style arguments (program name excluded),
// writing reports to out and diagnostics to err. Returns 0 on success, 1 on
// a domain-level failure (invalid box, infeasible construction, oracle
// counterexamples), 2 on malformed input or usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eprgame
