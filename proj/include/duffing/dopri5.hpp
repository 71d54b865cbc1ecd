#pragma once

// Embedded Dormand-Prince 5(4) pair with Hairer's continuous extension.
// Fixed-size state, header-only so the Duffing, variational and Hill
// right-hand sides all inline into the stage loop.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>

namespace duffing::detail {

template <std::size_t N>
using Vec = std::array<double, N>;

/// Raised by the stepper; callers translate into their own error type.
struct StepFailure {
    std::string reason;
    double t;
    // Last accepted state, padded to the widest system in use.
    std::array<double, 6> y;
};

struct StepperOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    std::size_t max_steps = 5'000'000;
};

namespace dp {
inline constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
inline constexpr double a21 = 1.0 / 5.0;
inline constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
inline constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
inline constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                        a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
inline constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                        a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
inline constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                        b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
// b - bhat
inline constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                        e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
// dense output
inline constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                        d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                        d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;
}  // namespace dp

/// Integrates y' = rhs(t, y) from t0 to t1 (t1 > t0).
///
/// `sample_times` must be ascending inside [t0, t1]; `on_sample(i, t, y)` is
/// called for each one, using the continuous extension inside a step (and the
/// exact step endpoint when a sample coincides with t1). `guard(y)` returns
/// false to abort with a StepFailure after the offending step.
template <std::size_t N, class Rhs, class Guard, class OnSample>
Vec<N> dopri5(Rhs&& rhs, double t0, double t1, Vec<N> y, const StepperOptions& opt,
              std::span<const double> sample_times, OnSample&& on_sample, Guard&& guard) {
    using namespace dp;
    auto fail = [&](const char* why, double t, const Vec<N>& last) {
        StepFailure f{why, t, {}};
        std::copy(last.begin(), last.end(), f.y.begin());
        throw f;
    };
    auto scaled_norm = [&](const Vec<N>& e, const Vec<N>& ya, const Vec<N>& yb) {
        double s = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sc = opt.atol + opt.rtol * std::max(std::abs(ya[i]), std::abs(yb[i]));
            s += (e[i] / sc) * (e[i] / sc);
        }
        return std::sqrt(s / static_cast<double>(N));
    };

    std::size_t next_sample = 0;
    while (next_sample < sample_times.size() && sample_times[next_sample] <= t0) {
        on_sample(next_sample, sample_times[next_sample], y);
        ++next_sample;
    }

    if (!(t1 > t0)) return y;

    double t = t0;
    Vec<N> k1, k2, k3, k4, k5, k6, k7, ytmp, ynew, err;
    rhs(t, y, k1);

    // Initial step guess (Hairer, Norsett & Wanner, II.4).
    double h;
    {
        Vec<N> zero{};
        const double d0 = scaled_norm(y, y, zero);
        const double d1n = scaled_norm(k1, y, zero);
        double h0 = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
        h0 = std::min(h0, t1 - t0);
        for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h0 * k1[i];
        rhs(t + h0, ytmp, k2);
        for (std::size_t i = 0; i < N; ++i) err[i] = (k2[i] - k1[i]) / h0;
        const double d2 = scaled_norm(err, y, zero);
        const double dm = std::max(d1n, d2);
        const double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 0.2);
        h = std::min(100.0 * h0, h1);
    }

    bool last_rejected = false;
    std::size_t steps = 0;
    while (t < t1) {
        if (++steps > opt.max_steps) fail("maximum step count exceeded", t, y);
        const double min_h = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t));
        if (h < min_h) fail("step size underflow", t, y);
        bool final_step = false;
        if (t + 1.01 * h >= t1) {
            h = t1 - t;
            final_step = true;
        }

        for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
        rhs(t + c2 * h, ytmp, k2);
        for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        rhs(t + c3 * h, ytmp, k3);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(t + c4 * h, ytmp, k4);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(t + c5 * h, ytmp, k5);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        const double t_new = final_step ? t1 : t + h;
        rhs(t_new, ytmp, k6);
        for (std::size_t i = 0; i < N; ++i)
            ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        rhs(t_new, ynew, k7);
        for (std::size_t i = 0; i < N; ++i)
            err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);

        double enorm = scaled_norm(err, y, ynew);
        bool finite = std::isfinite(enorm);
        for (std::size_t i = 0; i < N && finite; ++i) finite = std::isfinite(ynew[i]);
        if (!finite) {
            h *= 0.2;
            last_rejected = true;
            continue;
        }

        if (enorm > 1.0) {
            h *= std::max(0.2, 0.9 * std::pow(enorm, -0.2));
            last_rejected = true;
            continue;
        }

        // Accepted. Emit samples inside (t, t_new] before advancing.
        if (next_sample < sample_times.size() && sample_times[next_sample] <= t_new) {
            Vec<N> r2, r3, r4, r5;
            for (std::size_t i = 0; i < N; ++i) {
                r2[i] = ynew[i] - y[i];
                r3[i] = h * k1[i] - r2[i];
                r4[i] = r2[i] - h * k7[i] - r3[i];
                r5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
            }
            while (next_sample < sample_times.size() && sample_times[next_sample] <= t_new) {
                const double ts = sample_times[next_sample];
                if (ts >= t_new) {
                    on_sample(next_sample, ts, ynew);
                } else {
                    const double th = (ts - t) / h;
                    const double th1 = 1.0 - th;
                    Vec<N> yd;
                    for (std::size_t i = 0; i < N; ++i)
                        yd[i] = y[i] + th * (r2[i] + th1 * (r3[i] + th * (r4[i] + th1 * r5[i])));
                    on_sample(next_sample, ts, yd);
                }
                ++next_sample;
            }
        }

        if (!guard(ynew)) fail("state exceeded blow-up guard", t, y);

        t = t_new;
        y = ynew;
        k1 = k7;

        double fac = 0.9 * std::pow(std::max(enorm, 1e-10), -0.2);
        fac = std::clamp(fac, 0.2, 10.0);
        if (last_rejected) fac = std::min(fac, 1.0);
        h *= fac;
        last_rejected = false;
    }
    return y;
}

}  // namespace duffing::detail
