#pragma once

// T-periodic solutions as fixed points of the Poincare (time-T) map, found by
// multi-start Newton shooting inside the a-priori box and classified by their
// Floquet multipliers and fixed-point index.

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "duffing/linear_periodic.hpp"
#include "duffing/model.hpp"
#include "duffing/ode.hpp"

namespace duffing {

struct SearchBox {
    double x_lo = 0.0;
    double x_hi = 0.0;
    double v_lo = 0.0;
    double v_hi = 0.0;
    std::size_t grid_nx = 24;
    std::size_t grid_nv = 16;

    [[nodiscard]] double diameter() const noexcept;
    /// Inside the box scaled by `factor` about its centre.
    [[nodiscard]] bool contains(State s, double factor = 1.0) const noexcept;
};

/// Called with every monodromy matrix computed during shooting, including
/// those at non-converged Newton iterates.
using MonodromyObserver = std::function<void(const Monodromy&)>;

struct SolverConfig {
    Tolerances tolerances{};
    double newton_tol = 1e-10;
    int max_iter = 50;
    std::size_t grid_nx = 24;
    std::size_t grid_nv = 16;
    /// Overrides the velocity half-width V of the default box.
    std::optional<double> v_range;
    /// Overrides 1e-6 (1 + box diameter).
    std::optional<double> dedup_tol;
    std::size_t samples_per_period = kDefaultSamplesPerPeriod;
    /// Extra starts on the v = 0 line across the displacement range.
    std::size_t slice_starts = 64;
    MonodromyObserver on_monodromy;
};

enum class Stability { AsymptoticallyStable, Unstable, Marginal };
[[nodiscard]] std::string_view to_string(Stability s) noexcept;

using Multipliers = std::array<std::complex<double>, 2>;

struct Classification {
    Multipliers multipliers;
    int index = 0;
    Stability stability = Stability::Marginal;
};

inline constexpr double kMarginalTolerance = 1e-6;

/// Eigenvalues from lambda^2 - tr(M) lambda + det(M) = 0; stability from their
/// moduli; index = sign det(I - M), 0 when degenerate.
[[nodiscard]] Classification classify(const Monodromy& m) noexcept;

struct PeriodicOrbit {
    State z0;
    double residual = 0.0;
    Trajectory traj;
    Monodromy monodromy;
    Multipliers multipliers;
    int index = 0;
    Stability stability = Stability::Marginal;
    SignClass sign = SignClass::ChangesSign;
    double x_min = 0.0;
    double x_max = 0.0;
    int iterations = 0;
};

[[nodiscard]] FlowResult poincare_map(const DuffingParams& params, const Forcing& forcing, State z0,
                                      Tolerances tol = {});

enum class ShootStatus { Converged, NoConvergence, SingularJacobian, EscapedBox, IntegrationFailure };
[[nodiscard]] std::string_view to_string(ShootStatus s) noexcept;

struct ShootResult {
    ShootStatus status = ShootStatus::NoConvergence;
    std::optional<PeriodicOrbit> orbit;
    double residual = 0.0;
    int iterations = 0;
    State last;
};

/// Damped Newton on G(z) = P(z) - z. With a box, iterates leaving the box
/// doubled about its centre end the run with EscapedBox.
[[nodiscard]] ShootResult newton_shoot(const DuffingParams& params, const Forcing& forcing,
                                       State z_init, const SolverConfig& config = {},
                                       const SearchBox* box = nullptr);

/// Fills z0, traj, extrema, sign and classification from a converged start.
[[nodiscard]] PeriodicOrbit make_orbit(const DuffingParams& params, const Forcing& forcing, State z0,
                                       const Monodromy& m, double residual,
                                       const SolverConfig& config);

/// x in [C - m, sqrt(a) + m] with m = 0.1 (sqrt(a) - C); v in [-V, V] with
/// V = 2 (2 pi / T)(sqrt(a) - C). For forcing that is not positive the upper
/// bound sqrt(a) is replaced by -C.
[[nodiscard]] SearchBox default_search_box(const DuffingParams& params, const Forcing& forcing,
                                           const SolverConfig& config = {});

struct EnumerationDiagnostics {
    std::size_t starts = 0;
    std::size_t converged = 0;
    std::size_t duplicates = 0;
    std::size_t no_convergence = 0;
    std::size_t singular = 0;
    std::size_t escaped = 0;
    std::size_t integration_failures = 0;
};

struct Enumeration {
    std::vector<PeriodicOrbit> orbits;
    EnumerationDiagnostics diagnostics;
    double dedup_tol = 0.0;
};

/// Shoots from the box grid (cell centres) and the v = 0 slice, deduplicates
/// in initial-state space and sorts by x_min.
[[nodiscard]] Enumeration enumerate_orbits(const DuffingParams& params, const Forcing& forcing,
                                           const SearchBox& box, const SolverConfig& config = {});

/// Adjacent orbits satisfy x_i(t) < x_{i+1}(t) on every shared sample.
[[nodiscard]] bool pointwise_order(const std::vector<PeriodicOrbit>& orbits);

}  // namespace duffing
