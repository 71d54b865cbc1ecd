#pragma once

// Subcommand implementations behind the command-line front end. Each returns
// a process exit code: 0 success, 1 assertion failure, 2 usage/config error.

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "duffing/config.hpp"

namespace duffing {

enum ExitCode : int { kExitOk = 0, kExitAssertion = 1, kExitUsage = 2 };

struct AxisSpec {
    std::string name;  // a | c | mean | amplitude
    double lo = 0.0;
    double hi = 0.0;
    std::size_t steps = 0;
};

/// "name:lo:hi" or "name:lo:hi:steps"; `default_steps` fills the short form.
/// Throws ConfigError.
[[nodiscard]] AxisSpec parse_axis(std::string_view spec, std::size_t default_steps);

int cmd_verify(const RunConfig& cfg, std::ostream& diag);
int cmd_orbits(const RunConfig& cfg, std::ostream& diag);
int cmd_simulate(const RunConfig& cfg, double x0, double v0, double t_end, std::ostream& diag);
int cmd_linear(const RunConfig& cfg, std::ostream& diag);
int cmd_sweep(const RunConfig& cfg, const std::vector<AxisSpec>& axes, std::ostream& diag);
int cmd_phase(const RunConfig& cfg, std::ostream& diag);

}  // namespace duffing
