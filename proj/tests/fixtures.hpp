#pragma once

// Shared random problem families for the property tests and the acceptance run.

#include <cmath>
#include <random>
#include <vector>

#include "duffing/model.hpp"
#include "duffing/ode.hpp"

namespace fixture {

struct Instance {
    duffing::DuffingParams params;
    duffing::Forcing forcing;
    duffing::State s0;
};

/// Moderate stiffness and forcing with a start near the well so one period
/// never reaches the blow-up guard.
inline Instance random_instance(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> ua(0.5, 2.0), uc(0.3, 1.5), uT(2.0, 4.0);
    std::uniform_real_distribution<double> um(0.0, 0.25), uamp(-0.08, 0.08), us(-0.25, 0.25);
    const double a = ua(rng), c = uc(rng), T = uT(rng);
    duffing::Forcing f(um(rng), {uamp(rng), uamp(rng)}, {uamp(rng)}, T);
    return {duffing::DuffingParams(a, c, T), std::move(f), {us(rng), us(rng)}};
}

/// Forcing with certified range inside (h0 + 0.05, h0 + 0.5 + amplitude).
inline duffing::Forcing random_above(std::mt19937_64& rng, double a, double T) {
    const double h0 = duffing::h_critical(a);
    std::uniform_real_distribution<double> um(h0 + 0.1, h0 + 0.5);
    const double mean = um(rng);
    std::uniform_real_distribution<double> ua(-1.0, 1.0);
    const double budget = (mean - h0 - 0.05) / 3.0;
    return duffing::Forcing(mean, {budget * ua(rng), budget * ua(rng)}, {budget * ua(rng)}, T);
}

/// Forcing with certified range inside (0.02, h0 - 0.02).
inline duffing::Forcing random_below(std::mt19937_64& rng, double a, double T) {
    const double h0 = duffing::h_critical(a);
    const double lo = 0.04, hi = h0 - 0.04;
    std::uniform_real_distribution<double> um(lo, hi);
    const double mean = um(rng);
    const double budget = std::min(mean - lo, hi - mean) / 3.0;
    std::uniform_real_distribution<double> ua(-1.0, 1.0);
    return duffing::Forcing(mean, {budget * ua(rng), budget * ua(rng)}, {budget * ua(rng)}, T);
}

}  // namespace fixture
