#pragma once

// Run configuration: strict JSON ingestion and lossless serialization.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "duffing/model.hpp"
#include "duffing/orbit_finder.hpp"

namespace duffing {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct OutputConfig {
    std::string directory = ".";
    /// Significant digits for CSV output.
    int precision = 17;
};

/// Coefficient and forcing for the linear operator suite. `h` defaults to the
/// run's forcing.
struct LinearConfig {
    Fourier alpha;
    std::optional<Fourier> h;
};

struct RunConfig {
    DuffingParams params;
    Forcing forcing;
    SolverConfig solver;
    OutputConfig output;
    std::optional<LinearConfig> linear;
};

/// Compares every serialized field (the monodromy observer is not one).
[[nodiscard]] bool operator==(const RunConfig& l, const RunConfig& r);

/// Throws ConfigError on unknown keys, wrong types or invalid values.
[[nodiscard]] RunConfig parse_config(const nlohmann::json& j);
[[nodiscard]] RunConfig load_config(const std::filesystem::path& path);
[[nodiscard]] nlohmann::json to_json(const RunConfig& cfg);

[[nodiscard]] nlohmann::json fourier_to_json(const Fourier& f);

}  // namespace duffing
