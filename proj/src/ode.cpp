#include "duffing/ode.hpp"

#include <algorithm>
#include <cmath>

#include "duffing/dopri5.hpp"

namespace duffing {

double Trajectory::x_min() const {
    double m = samples.front().x;
    for (const auto& s : samples) m = std::min(m, s.x);
    return m;
}

double Trajectory::x_max() const {
    double m = samples.front().x;
    for (const auto& s : samples) m = std::max(m, s.x);
    return m;
}

double Monodromy::frobenius() const noexcept {
    return std::sqrt(m11 * m11 + m12 * m12 + m21 * m21 + m22 * m22);
}

Monodromy Monodromy::operator*(const Monodromy& o) const noexcept {
    return {m11 * o.m11 + m12 * o.m21, m11 * o.m12 + m12 * o.m22,
            m21 * o.m11 + m22 * o.m21, m21 * o.m12 + m22 * o.m22};
}

double blowup_bound(const DuffingParams& params) noexcept {
    return 1e3 * (std::sqrt(params.a()) + 1.0);
}

Derivative duffing_rhs(const DuffingParams& params, const Forcing& forcing, double t,
                       State s) noexcept {
    return {s.v, forcing(t) - params.c() * s.v - params.a() * s.x + s.x * s.x * s.x};
}

Derivative hill_rhs(const HillCoefficient& alpha, double c, double t, State s,
                    HillForm form) noexcept {
    const double damp = form == HillForm::Direct ? -c : c;
    return {s.v, damp * s.v - alpha(t) * s.x};
}

namespace {

std::vector<double> uniform_times(double t0, double t1, std::size_t intervals) {
    std::vector<double> ts(intervals + 1);
    const double dt = (t1 - t0) / static_cast<double>(intervals);
    for (std::size_t k = 0; k <= intervals; ++k) ts[k] = t0 + dt * static_cast<double>(k);
    ts.back() = t1;
    return ts;
}

std::size_t default_intervals(double span, double period) {
    const double n = std::ceil(static_cast<double>(kDefaultSamplesPerPeriod) * span / period - 1e-9);
    return static_cast<std::size_t>(std::max(1.0, n));
}

void check_span(double t0, double t1, Tolerances tol) {
    if (!(t1 >= t0)) throw DomainError("integration span must satisfy t1 >= t0");
    if (!(tol.rtol > 0.0 && tol.atol > 0.0)) throw DomainError("tolerances must be positive");
}

}  // namespace

Trajectory integrate(const DuffingParams& params, const Forcing& forcing, double t0, double t1,
                     State s0, Tolerances tol, std::size_t intervals) {
    check_span(t0, t1, tol);
    if (intervals == 0) intervals = default_intervals(t1 - t0, params.period());

    Trajectory traj;
    traj.t0 = t0;
    traj.t1 = t1;
    traj.tolerances = tol;
    const auto times = uniform_times(t0, t1, intervals);
    traj.samples.reserve(times.size());

    const double a = params.a(), c = params.c(), bound = blowup_bound(params);
    auto rhs = [&](double t, const detail::Vec<2>& y, detail::Vec<2>& dy) {
        dy[0] = y[1];
        dy[1] = forcing(t) - c * y[1] - a * y[0] + y[0] * y[0] * y[0];
    };
    auto guard = [bound](const detail::Vec<2>& y) {
        return std::abs(y[0]) <= bound && std::abs(y[1]) <= bound;
    };
    auto on_sample = [&](std::size_t, double t, const detail::Vec<2>& y) {
        traj.samples.push_back({t, y[0], y[1]});
    };

    const detail::StepperOptions opt{tol.rtol, tol.atol};
    try {
        detail::dopri5<2>(rhs, t0, t1, {s0.x, s0.v}, opt, times, on_sample, guard);
    } catch (const detail::StepFailure& f) {
        throw IntegrationFailure(f.reason, f.t, {f.y[0], f.y[1]}, std::move(traj.samples));
    }
    return traj;
}

FlowResult integrate_with_variational(const DuffingParams& params, const Forcing& forcing,
                                      double t0, double t1, State s0, Tolerances tol,
                                      const Monodromy& initial) {
    check_span(t0, t1, tol);
    const double a = params.a(), c = params.c(), bound = blowup_bound(params);
    auto rhs = [&](double t, const detail::Vec<6>& y, detail::Vec<6>& dy) {
        const double x = y[0];
        const double k = 3.0 * x * x - a;
        dy[0] = y[1];
        dy[1] = forcing(t) - c * y[1] - a * x + x * x * x;
        dy[2] = y[4];
        dy[3] = y[5];
        dy[4] = k * y[2] - c * y[4];
        dy[5] = k * y[3] - c * y[5];
    };
    auto guard = [bound](const detail::Vec<6>& y) {
        return std::abs(y[0]) <= bound && std::abs(y[1]) <= bound;
    };
    auto no_samples = [](std::size_t, double, const detail::Vec<6>&) {};

    const detail::StepperOptions opt{tol.rtol, tol.atol};
    detail::Vec<6> y0{s0.x, s0.v, initial.m11, initial.m12, initial.m21, initial.m22};
    try {
        const auto y = detail::dopri5<6>(rhs, t0, t1, y0, opt, {}, no_samples, guard);
        return {{y[0], y[1]}, {y[2], y[3], y[4], y[5]}};
    } catch (const detail::StepFailure& f) {
        throw IntegrationFailure(f.reason, f.t, {f.y[0], f.y[1]});
    }
}

}  // namespace duffing
