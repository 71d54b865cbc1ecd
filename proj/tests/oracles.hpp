#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the integrator, the Newton solver or the range certifier.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace oracle {

struct Xv {
    double x;
    double v;
};

/// Classical fixed-step RK4 for x'' + c x' + a x - x^3 = h(t).
inline Xv rk4_duffing(double a, double c, const std::function<double(double)>& h, double t0,
                      double t1, Xv s, std::size_t steps) {
    const double dt = (t1 - t0) / static_cast<double>(steps);
    auto f = [&](double t, double x, double v, double& dx, double& dv) {
        dx = v;
        dv = h(t) - c * v - a * x + x * x * x;
    };
    for (std::size_t n = 0; n < steps; ++n) {
        const double t = t0 + dt * static_cast<double>(n);
        double k1x, k1v, k2x, k2v, k3x, k3v, k4x, k4v;
        f(t, s.x, s.v, k1x, k1v);
        f(t + 0.5 * dt, s.x + 0.5 * dt * k1x, s.v + 0.5 * dt * k1v, k2x, k2v);
        f(t + 0.5 * dt, s.x + 0.5 * dt * k2x, s.v + 0.5 * dt * k2v, k3x, k3v);
        f(t + dt, s.x + dt * k3x, s.v + dt * k3v, k4x, k4v);
        s.x += dt / 6.0 * (k1x + 2 * k2x + 2 * k3x + k4x);
        s.v += dt / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
    }
    return s;
}

/// Fixed-step RK4 for x'' + c x' + alpha(t) x = h(t).
inline Xv rk4_hill(const std::function<double(double)>& alpha, double c,
                   const std::function<double(double)>& h, double t0, double t1, Xv s,
                   std::size_t steps) {
    const double dt = (t1 - t0) / static_cast<double>(steps);
    auto f = [&](double t, double x, double v, double& dx, double& dv) {
        dx = v;
        dv = h(t) - c * v - alpha(t) * x;
    };
    for (std::size_t n = 0; n < steps; ++n) {
        const double t = t0 + dt * static_cast<double>(n);
        double k1x, k1v, k2x, k2v, k3x, k3v, k4x, k4v;
        f(t, s.x, s.v, k1x, k1v);
        f(t + 0.5 * dt, s.x + 0.5 * dt * k1x, s.v + 0.5 * dt * k1v, k2x, k2v);
        f(t + 0.5 * dt, s.x + 0.5 * dt * k2x, s.v + 0.5 * dt * k2v, k3x, k3v);
        f(t + dt, s.x + dt * k3x, s.v + dt * k3v, k4x, k4v);
        s.x += dt / 6.0 * (k1x + 2 * k2x + 2 * k3x + k4x);
        s.v += dt / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
    }
    return s;
}

/// Real roots of a x - x^3 = h by sign-change scan on [-L, L] and bisection.
inline std::vector<double> cubic_roots(double a, double h) {
    auto p = [&](double x) { return a * x - x * x * x - h; };
    const double L = 2.0 + std::sqrt(a) + std::cbrt(std::abs(h)) * 2.0;
    const std::size_t n = 200000;
    std::vector<double> roots;
    double xl = -L, pl = p(xl);
    for (std::size_t i = 1; i <= n; ++i) {
        const double xr = -L + 2.0 * L * static_cast<double>(i) / static_cast<double>(n);
        const double pr = p(xr);
        if (pl == 0.0) roots.push_back(xl);
        if (pl * pr < 0.0) {
            double lo = xl, hi = xr;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                if ((p(lo) < 0.0) == (p(mid) < 0.0))
                    lo = mid;
                else
                    hi = mid;
            }
            roots.push_back(0.5 * (lo + hi));
        }
        xl = xr;
        pl = pr;
    }
    return roots;
}

/// x - x^3 = h  style single-root bisection on a bracket.
inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
    for (int it = 0; it < 300; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((f(lo) < 0.0) == (f(mid) < 0.0))
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

using Mat2 = std::array<double, 4>;  // row-major

/// exp(t A) for a 2x2 matrix with distinct eigenvalues, by eigendecomposition.
inline Mat2 expm2(const Mat2& A, double t) {
    using cd = std::complex<double>;
    const double tr = A[0] + A[3];
    const double det = A[0] * A[3] - A[1] * A[2];
    const cd disc = std::sqrt(cd(tr * tr - 4.0 * det));
    const cd l1 = 0.5 * (tr + disc), l2 = 0.5 * (tr - disc);
    // Eigenvectors (A12, l - A11) or (l - A22, A21).
    auto vec = [&](cd l) -> std::array<cd, 2> {
        if (std::abs(A[1]) > 1e-300) return {cd(A[1]), l - A[0]};
        return {l - A[3], cd(A[2])};
    };
    const auto v1 = vec(l1), v2 = vec(l2);
    const cd d = v1[0] * v2[1] - v2[0] * v1[1];
    // V^{-1} = 1/d [[v2y, -v2x], [-v1y, v1x]]
    const cd e1 = std::exp(l1 * t), e2 = std::exp(l2 * t);
    std::array<cd, 4> m{};
    m[0] = (v1[0] * e1 * v2[1] - v2[0] * e2 * v1[1]) / d;
    m[1] = (-v1[0] * e1 * v2[0] + v2[0] * e2 * v1[0]) / d;
    m[2] = (v1[1] * e1 * v2[1] - v2[1] * e2 * v1[1]) / d;
    m[3] = (-v1[1] * e1 * v2[0] + v2[1] * e2 * v1[0]) / d;
    return {m[0].real(), m[1].real(), m[2].real(), m[3].real()};
}

/// Eigenvalues of a real 2x2 matrix.
inline std::array<std::complex<double>, 2> eig2(const Mat2& A) {
    using cd = std::complex<double>;
    const double tr = A[0] + A[3];
    const double det = A[0] * A[3] - A[1] * A[2];
    const cd disc = std::sqrt(cd(tr * tr - 4.0 * det));
    return {0.5 * (tr + disc), 0.5 * (tr - disc)};
}

/// Steady response x = A cos(wt) + B sin(wt) of x'' + c x' + k x = F cos(wt).
inline std::array<double, 2> harmonic_balance(double k, double c, double w, double F) {
    // (k - w^2) A + c w B = F ;  -c w A + (k - w^2) B = 0
    const double p = k - w * w, q = c * w;
    const double den = p * p + q * q;
    return {F * p / den, F * q / den};
}

/// Extremes of f on a uniform grid of n points over [0, T).
inline std::array<double, 2> brute_range(const std::function<double(double)>& f, double T,
                                         std::size_t n) {
    double lo = f(0.0), hi = lo;
    for (std::size_t i = 1; i < n; ++i) {
        const double v = f(T * static_cast<double>(i) / static_cast<double>(n));
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return {lo, hi};
}

}  // namespace oracle
