#include "duffing/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace duffing {

namespace {

constexpr std::size_t kRangeGrid = 4096;

bool finite_all(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

// Golden-section search for an extremum of f on [lo, hi]; sign = +1 minimizes,
// -1 maximizes. Returns the extreme value found, which is always an actual
// evaluation of f.
double golden_extremum(const Fourier& f, double lo, double hi, double sign) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = sign * f(x1);
    double f2 = sign * f(x2);
    double best = std::min(std::min(sign * f(lo), sign * f(hi)), std::min(f1, f2));
    for (int it = 0; it < 200 && (hi - lo) > 1e-15 * (1.0 + std::abs(lo)); ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = sign * f(x1);
            best = std::min(best, f1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = sign * f(x2);
            best = std::min(best, f2);
        }
    }
    return sign * best;
}

}  // namespace

DuffingParams::DuffingParams(double a, double c, double period)
    : a_(a), c_(c), period_(period) {
    if (!(std::isfinite(a) && a > 0.0)) throw DomainError("stiffness a must be finite and > 0");
    if (!(std::isfinite(c) && c > 0.0)) throw DomainError("damping c must be finite and > 0");
    if (!(std::isfinite(period) && period > 0.0))
        throw DomainError("period T must be finite and > 0");
    const double w = kPi / period;
    lambda1_ = w * w + c * c / 4.0;
    lambda2_ = 4.0 * w * w + c * c / 4.0;
}

Fourier::Fourier(double mean, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs,
                 double period)
    : mean_(mean), cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)), period_(period) {
    if (!std::isfinite(mean) || !finite_all(cos_) || !finite_all(sin_))
        throw DomainError("Fourier coefficients must be finite");
    if (cos_.size() > kMaxHarmonics || sin_.size() > kMaxHarmonics)
        throw DomainError("at most 16 harmonics per series");
    if (!(std::isfinite(period) && period > 0.0))
        throw DomainError("Fourier period must be finite and > 0");
    omega_ = 2.0 * kPi / period_;
}

double Fourier::eval(double t) const noexcept {
    const std::size_t n = std::max(cos_.size(), sin_.size());
    if (n == 0) return mean_;
    // Reduce the phase first so that eval(t + T) == eval(t) up to the
    // rounding of the reduction itself.
    const double phase = omega_ * (t - period_ * std::floor(t / period_));
    const double c1 = std::cos(phase);
    const double s1 = std::sin(phase);
    double ck = c1;
    double sk = s1;
    double sum = mean_;
    for (std::size_t k = 0; k < n; ++k) {
        if (k < cos_.size()) sum += cos_[k] * ck;
        if (k < sin_.size()) sum += sin_[k] * sk;
        const double cn = ck * c1 - sk * s1;
        sk = sk * c1 + ck * s1;
        ck = cn;
    }
    return sum;
}

bool Fourier::is_constant() const noexcept {
    auto zero = [](double v) { return v == 0.0; };
    return std::all_of(cos_.begin(), cos_.end(), zero) &&
           std::all_of(sin_.begin(), sin_.end(), zero);
}

Fourier Fourier::with_mean(double mean) const { return {mean, cos_, sin_, period_}; }

Fourier Fourier::shifted(double shift) const {
    // cos(k w (t+s)) = cos(kwt)cos(kws) - sin(kwt)sin(kws)
    // sin(k w (t+s)) = sin(kwt)cos(kws) + cos(kwt)sin(kws)
    const std::size_t n = std::max(cos_.size(), sin_.size());
    std::vector<double> cs(n, 0.0), ss(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const double ak = k < cos_.size() ? cos_[k] : 0.0;
        const double bk = k < sin_.size() ? sin_[k] : 0.0;
        const double ang = omega_ * static_cast<double>(k + 1) * shift;
        const double ca = std::cos(ang), sa = std::sin(ang);
        cs[k] = ak * ca + bk * sa;
        ss[k] = bk * ca - ak * sa;
    }
    return {mean_, std::move(cs), std::move(ss), period_};
}

Range forcing_range(const Fourier& f) {
    if (f.is_constant()) return {f.mean(), f.mean()};
    const double T = f.period();
    const double dt = T / static_cast<double>(kRangeGrid);
    std::vector<double> vals(kRangeGrid);
    for (std::size_t i = 0; i < kRangeGrid; ++i) vals[i] = f(dt * static_cast<double>(i));

    Range r{*std::min_element(vals.begin(), vals.end()), *std::max_element(vals.begin(), vals.end())};
    for (std::size_t i = 0; i < kRangeGrid; ++i) {
        const double prev = vals[(i + kRangeGrid - 1) % kRangeGrid];
        const double next = vals[(i + 1) % kRangeGrid];
        const double t = dt * static_cast<double>(i);
        if (vals[i] <= prev && vals[i] <= next)
            r.lo = std::min(r.lo, golden_extremum(f, t - dt, t + dt, 1.0));
        if (vals[i] >= prev && vals[i] >= next)
            r.hi = std::max(r.hi, golden_extremum(f, t - dt, t + dt, -1.0));
    }
    return r;
}

double h_critical(double a) {
    if (!(a > 0.0)) throw DomainError("h_critical: a must be > 0");
    return std::sqrt(4.0 * a * a * a / 27.0);
}

double negative_root_bound(double a, double hmax) {
    if (!(a > 0.0)) throw DomainError("negative_root_bound: a must be > 0");
    if (!(hmax > 0.0)) throw DomainError("negative_root_bound: hmax must be > 0");
    // g is strictly decreasing on (-inf, -sqrt(a/3)] from +inf to -h0.
    double hi = -std::sqrt(a / 3.0);
    double lo = 2.0 * hi;
    while (cubic_g(a, lo) < hmax) lo *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (cubic_g(a, mid) > hmax)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-14 * std::abs(lo)) break;
    }
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 4; ++it) {
        const double d = a - 3.0 * x * x;
        if (d == 0.0) break;
        const double step = (cubic_g(a, x) - hmax) / d;
        x -= step;
        if (std::abs(step) <= 1e-16 * std::abs(x)) break;
    }
    return x;
}

CubicProfile make_profile(double a, double hmax) {
    CubicProfile p;
    p.a = a;
    p.h0 = h_critical(a);
    p.b = -2.0 * std::sqrt(a / 3.0);
    p.sqrt_a = std::sqrt(a);
    p.sqrt_a3 = std::sqrt(a / 3.0);
    p.hmax = hmax;
    p.C = hmax > 0.0 ? negative_root_bound(a, hmax) : std::numeric_limits<double>::quiet_NaN();
    return p;
}

std::string_view to_string(Regime r) noexcept {
    switch (r) {
        case Regime::Above: return "Above";
        case Regime::Below: return "Below";
        case Regime::Mixed: return "Mixed";
        case Regime::Invalid: return "Invalid";
    }
    return "Invalid";
}

Regime regime_from_string(std::string_view s) {
    if (s == "Above") return Regime::Above;
    if (s == "Below") return Regime::Below;
    if (s == "Mixed") return Regime::Mixed;
    if (s == "Invalid") return Regime::Invalid;
    throw DomainError("unknown regime '" + std::string(s) + "'");
}

Regime classify_regime(const DuffingParams& params, Range range) {
    const double h0 = h_critical(params.a());
    if (range.lo <= 0.0) return Regime::Invalid;
    if (range.lo > h0) return Regime::Above;
    if (range.hi < h0) return Regime::Below;
    return Regime::Mixed;
}

Regime classify_regime(const DuffingParams& params, const Forcing& forcing) {
    return classify_regime(params, forcing_range(forcing));
}

bool damping_condition(const DuffingParams& params) noexcept {
    return params.a() < params.lambda1();
}

}  // namespace duffing
