#include "duffing/linear_periodic.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "duffing/dopri5.hpp"

namespace duffing {

namespace {

void check_period(const Fourier& f, double period, const char* what) {
    if (std::abs(f.period() - period) > 1e-12 * period)
        throw DomainError(std::string(what) + " period does not match the problem period");
}

std::vector<double> grid(double period, std::size_t intervals) {
    std::vector<double> ts(intervals + 1);
    for (std::size_t k = 0; k <= intervals; ++k)
        ts[k] = period * static_cast<double>(k) / static_cast<double>(intervals);
    ts.back() = period;
    return ts;
}

auto always_ok = [](const auto&) { return true; };

[[noreturn]] void rethrow(const detail::StepFailure& f) {
    throw IntegrationFailure(f.reason, f.t, {f.y[0], f.y[1]});
}

// Integrates the particular solution of L_alpha x = h from zero data together
// with the homogeneous fundamental matrix.
std::pair<State, Monodromy> particular_and_monodromy(const HillCoefficient& alpha, double c,
                                                     const Forcing* h, double period,
                                                     Tolerances tol) {
    auto rhs = [&](double t, const detail::Vec<6>& y, detail::Vec<6>& dy) {
        const double al = alpha(t);
        dy[0] = y[1];
        dy[1] = (h ? (*h)(t) : 0.0) - c * y[1] - al * y[0];
        dy[2] = y[4];
        dy[3] = y[5];
        dy[4] = -al * y[2] - c * y[4];
        dy[5] = -al * y[3] - c * y[5];
    };
    auto none = [](std::size_t, double, const detail::Vec<6>&) {};
    try {
        const auto y = detail::dopri5<6>(rhs, 0.0, period, {0, 0, 1, 0, 0, 1},
                                         {tol.rtol, tol.atol}, {}, none, always_ok);
        return {{y[0], y[1]}, {y[2], y[3], y[4], y[5]}};
    } catch (const detail::StepFailure& f) {
        rethrow(f);
    }
}

Trajectory integrate_hill(const HillCoefficient& alpha, double c, const Forcing* h, double period,
                          State s0, HillForm form, Tolerances tol, std::size_t intervals) {
    const double damp = form == HillForm::Direct ? -c : c;
    auto rhs = [&](double t, const detail::Vec<2>& y, detail::Vec<2>& dy) {
        dy[0] = y[1];
        dy[1] = (h ? (*h)(t) : 0.0) + damp * y[1] - alpha(t) * y[0];
    };
    Trajectory traj;
    traj.t0 = 0.0;
    traj.t1 = period;
    traj.tolerances = tol;
    const auto times = grid(period, intervals);
    traj.samples.reserve(times.size());
    auto on_sample = [&](std::size_t, double t, const detail::Vec<2>& y) {
        traj.samples.push_back({t, y[0], y[1]});
    };
    try {
        detail::dopri5<2>(rhs, 0.0, period, {s0.x, s0.v}, {tol.rtol, tol.atol}, times, on_sample,
                          always_ok);
    } catch (const detail::StepFailure& f) {
        rethrow(f);
    }
    return traj;
}

}  // namespace

double degeneracy_threshold(const Monodromy& m) noexcept { return 1e-8 * (1.0 + m.frobenius()); }

bool is_degenerate(const Monodromy& m) noexcept {
    return std::abs(m.det_i_minus()) <= degeneracy_threshold(m);
}

Monodromy monodromy_linear(const HillCoefficient& alpha, double c, double period, Tolerances tol) {
    check_period(alpha, period, "Hill coefficient");
    return particular_and_monodromy(alpha, c, nullptr, period, tol).second;
}

bool is_nondegenerate(const HillCoefficient& alpha, double c, double period, Tolerances tol) {
    return !is_degenerate(monodromy_linear(alpha, c, period, tol));
}

LinearPeriodicSolution solve_linear_periodic(const HillCoefficient& alpha, double c,
                                             const Forcing& h, double period, Tolerances tol,
                                             std::size_t intervals) {
    check_period(alpha, period, "Hill coefficient");
    check_period(h, period, "forcing");
    if (intervals == 0) intervals = kDefaultSamplesPerPeriod;

    const auto [p, m] = particular_and_monodromy(alpha, c, &h, period, tol);
    if (is_degenerate(m))
        throw DegenerateOperator("linear periodic operator has a nontrivial periodic kernel");

    // z(T) = M z0 + p  and  z(T) = z0  =>  (I - M) z0 = p
    const double det = m.det_i_minus();
    const double z0x = ((1.0 - m.m22) * p.x + m.m12 * p.v) / det;
    const double z0v = (m.m21 * p.x + (1.0 - m.m11) * p.v) / det;

    LinearPeriodicSolution sol;
    sol.initial = {z0x, z0v};
    sol.trajectory = integrate_hill(alpha, c, &h, period, sol.initial, HillForm::Direct, tol, intervals);
    const State end = sol.trajectory.back_state();
    sol.residual = std::max(std::abs(end.x - z0x), std::abs(end.v - z0v)) /
                   (1.0 + std::max(std::abs(z0x), std::abs(z0v)));
    return sol;
}

int operator_index(const HillCoefficient& alpha, double c, double period, Tolerances tol) {
    const Monodromy m = monodromy_linear(alpha, c, period, tol);
    if (is_degenerate(m))
        throw DegenerateOperator("operator index undefined: periodic kernel present");
    return m.det_i_minus() > 0.0 ? 1 : -1;
}

std::string_view to_string(SignClass s) noexcept {
    switch (s) {
        case SignClass::Positive: return "Positive";
        case SignClass::Negative: return "Negative";
        case SignClass::ChangesSign: return "ChangesSign";
    }
    return "ChangesSign";
}

SignClass sign_classify(const Trajectory& traj) {
    double lo = traj.samples.front().x, hi = lo, sup = 0.0;
    for (const auto& s : traj.samples) {
        lo = std::min(lo, s.x);
        hi = std::max(hi, s.x);
        sup = std::max(sup, std::abs(s.x));
    }
    const double tol = 1e-9 * (1.0 + sup);
    if (lo > tol) return SignClass::Positive;
    if (hi < -tol) return SignClass::Negative;
    return SignClass::ChangesSign;
}

Trajectory disconjugacy_witness(const HillCoefficient& alpha, double c, double period,
                                Tolerances tol, std::size_t intervals) {
    check_period(alpha, period, "Hill coefficient");
    return integrate_hill(alpha, c, nullptr, period, {0.0, 1.0}, HillForm::Adjoint, tol,
                          std::max<std::size_t>(intervals, 1));
}

bool witness_positive(const Trajectory& witness, double tol) {
    return std::all_of(witness.samples.begin(), witness.samples.end(), [&](const Sample& s) {
        return s.t <= witness.t0 || s.x > tol;
    });
}

std::string_view to_string(MaxPrincipleOutcome o) noexcept {
    switch (o) {
        case MaxPrincipleOutcome::Positive: return "Positive";
        case MaxPrincipleOutcome::Negative: return "Negative";
        case MaxPrincipleOutcome::ChangesSign: return "ChangesSign";
        case MaxPrincipleOutcome::Degenerate: return "Degenerate";
    }
    return "Degenerate";
}

MaximumPrincipleResult maximum_principle_check(const HillCoefficient& alpha, double c,
                                               const Forcing& h, double period, Tolerances tol) {
    if (!(forcing_range(h).lo > 0.0))
        throw DomainError("maximum principle requires positive forcing");

    MaximumPrincipleResult r;
    r.alpha_range = forcing_range(alpha);
    const double w = kPi / period;
    r.bound = w * w + c * c / 4.0;
    r.hypothesis_ok = r.alpha_range.hi <= r.bound;

    try {
        r.solution = solve_linear_periodic(alpha, c, h, period, tol);
    } catch (const DegenerateOperator&) {
        r.outcome = MaxPrincipleOutcome::Degenerate;
        return r;
    }
    switch (sign_classify(r.solution->trajectory)) {
        case SignClass::Positive: r.outcome = MaxPrincipleOutcome::Positive; break;
        case SignClass::Negative: r.outcome = MaxPrincipleOutcome::Negative; break;
        case SignClass::ChangesSign: r.outcome = MaxPrincipleOutcome::ChangesSign; break;
    }

    if (r.hypothesis_ok) {
        r.asserted = true;
        r.assertion_passed = r.outcome != MaxPrincipleOutcome::ChangesSign;
        if (r.alpha_range.lo > 0.0) r.assertion_passed = r.outcome == MaxPrincipleOutcome::Positive;
        if (r.alpha_range.hi < 0.0) r.assertion_passed = r.outcome == MaxPrincipleOutcome::Negative;
    }
    return r;
}

}  // namespace duffing
