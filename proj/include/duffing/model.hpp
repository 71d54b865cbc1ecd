#pragma once

// Problem definition for the forced Duffing oscillator
//
//     x'' + c x' + a x - x^3 = h(t),    h(t + T) = h(t),
//
// together with the closed-form landmarks of the cubic g(x) = a x - x^3
// that bound and localize its periodic solutions.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace duffing {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr std::size_t kMaxHarmonics = 16;

/// Thrown when a parameter leaves the admissible cone a, c, T > 0.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Stiffness a, damping c and forcing period T; all strictly positive.
class DuffingParams {
public:
    DuffingParams(double a, double c, double period);

    [[nodiscard]] double a() const noexcept { return a_; }
    [[nodiscard]] double c() const noexcept { return c_; }
    [[nodiscard]] double period() const noexcept { return period_; }

    /// First Dirichlet eigenvalue bound (pi/T)^2 + c^2/4.
    [[nodiscard]] double lambda1() const noexcept { return lambda1_; }
    /// Periodic-spectrum bound (2 pi/T)^2 + c^2/4.
    [[nodiscard]] double lambda2() const noexcept { return lambda2_; }

private:
    double a_;
    double c_;
    double period_;
    double lambda1_;
    double lambda2_;
};

/// A T-periodic trigonometric polynomial
///     mean + sum_k cos_k cos(2 pi k t / T) + sin_k sin(2 pi k t / T).
/// Also used for the Hill coefficient alpha(t) of the linear operator.
class Fourier {
public:
    Fourier(double mean, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs,
            double period);

    static Fourier constant(double value, double period) { return {value, {}, {}, period}; }

    [[nodiscard]] double operator()(double t) const noexcept { return eval(t); }
    [[nodiscard]] double eval(double t) const noexcept;

    [[nodiscard]] double mean() const noexcept { return mean_; }
    [[nodiscard]] const std::vector<double>& cos_coeffs() const noexcept { return cos_; }
    [[nodiscard]] const std::vector<double>& sin_coeffs() const noexcept { return sin_; }
    [[nodiscard]] double period() const noexcept { return period_; }
    [[nodiscard]] bool is_constant() const noexcept;

    /// Same series with its mean replaced.
    [[nodiscard]] Fourier with_mean(double mean) const;
    /// t -> f(t + shift).
    [[nodiscard]] Fourier shifted(double shift) const;

private:
    double mean_;
    std::vector<double> cos_;
    std::vector<double> sin_;
    double period_;
    double omega_;
};

using Forcing = Fourier;
using HillCoefficient = Fourier;

struct Range {
    double lo = 0.0;
    double hi = 0.0;
};

/// Certified range of a trig polynomial: 4096-point grid, then golden-section
/// refinement of every grid-local extremum.
[[nodiscard]] Range forcing_range(const Fourier& f);

[[nodiscard]] double h_critical(double a);

[[nodiscard]] constexpr double cubic_g(double a, double x) noexcept { return a * x - x * x * x; }

/// Unique root of g(C) = hmax on (-inf, -sqrt(a/3)].
[[nodiscard]] double negative_root_bound(double a, double hmax);

/// Closed-form landmarks of g for a given stiffness. `C` is only meaningful
/// when built with a forcing sup (see make_profile).
struct CubicProfile {
    double a = 0.0;
    double h0 = 0.0;
    double b = 0.0;
    double sqrt_a = 0.0;
    double sqrt_a3 = 0.0;
    double C = 0.0;
    double hmax = 0.0;
};

[[nodiscard]] CubicProfile make_profile(double a, double hmax);

enum class Regime { Above, Below, Mixed, Invalid };

[[nodiscard]] std::string_view to_string(Regime r) noexcept;
[[nodiscard]] Regime regime_from_string(std::string_view s);

/// Classifies the certified forcing range against h0 with strict inequalities.
[[nodiscard]] Regime classify_regime(const DuffingParams& params, const Forcing& forcing);
[[nodiscard]] Regime classify_regime(const DuffingParams& params, Range range);

/// a < (pi/T)^2 + c^2/4, strictly.
[[nodiscard]] bool damping_condition(const DuffingParams& params) noexcept;

}  // namespace duffing
