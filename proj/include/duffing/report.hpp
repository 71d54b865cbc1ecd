#pragma once

// Serialization of reports and trajectories: JSON, CSV and SVG.

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "duffing/orbit_finder.hpp"
#include "duffing/verifier.hpp"

namespace duffing {

[[nodiscard]] nlohmann::json orbit_to_json(const PeriodicOrbit& orbit);
[[nodiscard]] nlohmann::json check_to_json(const CheckResult& check);
[[nodiscard]] nlohmann::json diagnostics_to_json(const EnumerationDiagnostics& d);

/// Top-level keys: params, forcing, regime, damping_ok, orbits, checks,
/// degree_sum, diagnostics.
[[nodiscard]] nlohmann::json to_json(const VerificationReport& report);

/// Header `t,x,v`, one row per sample, `%.<precision>g` formatting.
void write_trajectory_csv(std::ostream& out, const std::vector<Sample>& samples, int precision = 17);

/// (x, v) phase portrait; stable orbits solid, others dashed, z0 marked.
[[nodiscard]] std::string phase_svg(const std::vector<PeriodicOrbit>& orbits);

}  // namespace duffing
