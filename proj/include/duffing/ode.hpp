#pragma once

// Time integration of the Duffing system and its first variational equation.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "duffing/model.hpp"

namespace duffing {

struct State {
    double x = 0.0;
    double v = 0.0;
};

struct Derivative {
    double dx = 0.0;
    double dv = 0.0;
};

struct Tolerances {
    double rtol = 1e-10;
    double atol = 1e-12;
};

struct Sample {
    double t = 0.0;
    double x = 0.0;
    double v = 0.0;
};

struct Trajectory {
    std::vector<Sample> samples;
    double t0 = 0.0;
    double t1 = 0.0;
    Tolerances tolerances;

    [[nodiscard]] State front_state() const { return {samples.front().x, samples.front().v}; }
    [[nodiscard]] State back_state() const { return {samples.back().x, samples.back().v}; }
    [[nodiscard]] double x_min() const;
    [[nodiscard]] double x_max() const;
};

/// Row-major 2x2 fundamental matrix.
struct Monodromy {
    double m11 = 1.0;
    double m12 = 0.0;
    double m21 = 0.0;
    double m22 = 1.0;

    static constexpr Monodromy identity() noexcept { return {}; }

    [[nodiscard]] constexpr double det() const noexcept { return m11 * m22 - m12 * m21; }
    [[nodiscard]] constexpr double trace() const noexcept { return m11 + m22; }
    /// det(I - M)
    [[nodiscard]] constexpr double det_i_minus() const noexcept {
        return (1.0 - m11) * (1.0 - m22) - m12 * m21;
    }
    [[nodiscard]] double frobenius() const noexcept;
    [[nodiscard]] Monodromy operator*(const Monodromy& o) const noexcept;
};

/// Step-size underflow, step budget exhaustion or blow-up. Carries the last
/// accepted point and whatever dense samples were produced before it.
class IntegrationFailure : public std::runtime_error {
public:
    IntegrationFailure(const std::string& what, double t, State last, std::vector<Sample> partial = {})
        : std::runtime_error(what), t_(t), last_(last), partial_(std::move(partial)) {}

    [[nodiscard]] double t() const noexcept { return t_; }
    [[nodiscard]] State last_state() const noexcept { return last_; }
    [[nodiscard]] const std::vector<Sample>& partial() const noexcept { return partial_; }

private:
    double t_;
    State last_;
    std::vector<Sample> partial_;
};

/// Samples per forcing period on dense-output grids.
inline constexpr std::size_t kDefaultSamplesPerPeriod = 512;

/// |x| or |v| above this aborts an integration.
[[nodiscard]] double blowup_bound(const DuffingParams& params) noexcept;

[[nodiscard]] Derivative duffing_rhs(const DuffingParams& params, const Forcing& forcing, double t,
                                     State s) noexcept;

/// Dense trajectory over [t0, t1] sampled at `intervals + 1` uniform points
/// (both endpoints included). intervals == 0 picks 512 per forcing period.
[[nodiscard]] Trajectory integrate(const DuffingParams& params, const Forcing& forcing, double t0,
                                   double t1, State s0, Tolerances tol = {},
                                   std::size_t intervals = 0);

struct FlowResult {
    State end;
    Monodromy monodromy;
};

/// Joint integration of the state and the variational matrix
/// M' = [[0, 1], [3x^2 - a, -c]] M with M(t0) = initial.
[[nodiscard]] FlowResult integrate_with_variational(const DuffingParams& params,
                                                    const Forcing& forcing, double t0, double t1,
                                                    State s0, Tolerances tol = {},
                                                    const Monodromy& initial = Monodromy::identity());

/// Direct form x'' + c x' + alpha x = 0; Adjoint form y'' - c y' + alpha y = 0.
enum class HillForm { Direct, Adjoint };

[[nodiscard]] Derivative hill_rhs(const HillCoefficient& alpha, double c, double t, State s,
                                  HillForm form = HillForm::Direct) noexcept;

}  // namespace duffing
