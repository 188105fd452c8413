#pragma once

// Mode drivers behind the command-line tool. Each writes its artifacts under
// cfg.out and returns a process exit status: 0 = all checks passed or
// not-applicable, 1 = at least one failed check. Configuration and runtime
// errors are thrown (the tool maps them to exit status 2).

#include <iosfwd>

#include "rhf/config.hpp"
#include "rhf/flow.hpp"
#include "rhf/monitors.hpp"

namespace rhf {

// Builds the initial state from the configured profile or snapshot files and
// verifies the metric is SPD everywhere.
FlowState make_initial_state(const RunConfig& cfg);

// Default shift constant: C_override if positive, else max(0, -min_M S(0)) + 1.
double choose_C(const RunConfig& cfg, const FlowState& initial);

int run_verify_identities(const RunConfig& cfg, std::ostream& log);
int run_flow(const RunConfig& cfg, std::ostream& log);
int run_convergence(const RunConfig& cfg, std::ostream& log);
int run_bounds_only(const RunConfig& cfg, std::ostream& log);

// dispatches on cfg.mode
int run(const RunConfig& cfg, std::ostream& log);

// least-squares slope of log(err) vs log(h); used by the convergence mode
double fit_order(const std::vector<double>& h, const std::vector<double>& err);

}  // namespace rhf
