#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "duffing/orbit_finder.hpp"
#include "oracles.hpp"

using namespace duffing;

namespace {

const DuffingParams kP(1.0, 1.0, 3.0);

Forcing cosine_below() { return Forcing(0.2, {0.1}, {}, 3.0); }

double sup_diff(State a, State b) { return std::max(std::abs(a.x - b.x), std::abs(a.v - b.v)); }

PeriodicOrbit constant_orbit(double x, double T = 3.0) {
    PeriodicOrbit o;
    o.z0 = {x, 0.0};
    o.x_min = o.x_max = x;
    o.traj.t0 = 0.0;
    o.traj.t1 = T;
    for (int i = 0; i <= 512; ++i) o.traj.samples.push_back({T * i / 512.0, x, 0.0});
    return o;
}

}  // namespace

TEST_SUITE("orbit_finder") {

TEST_CASE("poincare_map fixed points and oracle agreement") {
    const double xs = oracle::bisect([](double x) { return x - x * x * x - 0.2; }, -0.5, 0.5);
    const FlowResult eq = poincare_map(kP, Forcing::constant(0.2, 3.0), {xs, 0.0});
    CHECK(sup_diff(eq.end, {xs, 0.0}) <= 1e-10);

    const FlowResult origin = poincare_map(kP, Forcing::constant(0.0, 3.0), {0.0, 0.0});
    CHECK(sup_diff(origin.end, {0.0, 0.0}) == 0.0);

    const FlowResult gen = poincare_map(kP, cosine_below(), {0.5, 0.0});
    const auto ref = oracle::rk4_duffing(
        1.0, 1.0, [](double t) { return 0.2 + 0.1 * std::cos(2 * kPi * t / 3.0); }, 0.0, 3.0,
        {0.5, 0.0}, 1'000'000);
    CHECK(std::abs(gen.end.x - ref.x) <= 1e-8);
    CHECK(std::abs(gen.end.v - ref.v) <= 1e-8);
}

TEST_CASE("newton_shoot from an exact equilibrium") {
    const double xs = oracle::bisect([](double x) { return x - x * x * x - 0.2; }, -0.5, 0.5);
    const ShootResult r = newton_shoot(kP, Forcing::constant(0.2, 3.0), {xs, 0.0});
    REQUIRE(r.status == ShootStatus::Converged);
    CHECK(r.iterations <= 2);
    CHECK(r.residual <= 1e-12);
    CHECK(r.orbit->stability == Stability::AsymptoticallyStable);
    CHECK(r.orbit->index == 1);
}

TEST_CASE("newton_shoot finds the middle orbit of the cosine case") {
    const ShootResult r = newton_shoot(kP, cosine_below(), {0.21, 0.0});
    REQUIRE(r.status == ShootStatus::Converged);
    const PeriodicOrbit& o = *r.orbit;
    CHECK(o.x_min > 0.0);
    CHECK(o.x_max < 1.0);
    CHECK(o.residual <= 1e-10);
    CHECK(o.sign == SignClass::Positive);
    CHECK(o.stability == Stability::AsymptoticallyStable);
    const auto ref = oracle::rk4_duffing(
        1.0, 1.0, [](double t) { return 0.2 + 0.1 * std::cos(2 * kPi * t / 3.0); }, 0.0, 3.0,
        {o.z0.x, o.z0.v}, 1'000'000);
    CHECK(std::abs(ref.x - o.z0.x) <= 1e-8);
    CHECK(std::abs(ref.v - o.z0.v) <= 1e-8);
}

TEST_CASE("newton_shoot from far away escapes") {
    const SearchBox box = default_search_box(kP, cosine_below());
    const ShootResult r = newton_shoot(kP, cosine_below(), {50.0, 0.0}, {}, &box);
    CHECK((r.status == ShootStatus::EscapedBox || r.status == ShootStatus::IntegrationFailure));
    CHECK_FALSE(r.orbit.has_value());
    const ShootResult nobox = newton_shoot(kP, cosine_below(), {50.0, 0.0});
    CHECK((nobox.status == ShootStatus::EscapedBox || nobox.status == ShootStatus::IntegrationFailure));

    SolverConfig bad;
    bad.newton_tol = 0.0;
    CHECK_THROWS_AS((void)newton_shoot(kP, cosine_below(), {0.2, 0.0}, bad), DomainError);
}

TEST_CASE("newton_shoot reports exhaustion") {
    SolverConfig cfg;
    cfg.max_iter = 1;
    const ShootResult r = newton_shoot(kP, cosine_below(), {0.5, 0.3}, cfg);
    CHECK(r.status != ShootStatus::Converged);
    CHECK(r.iterations == 1);
}

TEST_CASE("default_search_box") {
    const SearchBox big = default_search_box(DuffingParams(3.0, 1.0, 3.0), Forcing::constant(2.0, 3.0));
    CHECK(big.x_lo == doctest::Approx(-2.0 - 0.1 * (std::sqrt(3.0) + 2.0)).epsilon(1e-12));
    CHECK(big.x_lo == doctest::Approx(-2.373).epsilon(1e-3));
    CHECK(big.x_hi == doctest::Approx(2.105).epsilon(1e-3));
    CHECK(big.grid_nx == 24);
    CHECK(big.grid_nv == 16);

    const Forcing f(0.2, {0.1}, {}, 3.0);  // sup |h| = 0.3
    const SearchBox b = default_search_box(kP, f);
    const double C = oracle::bisect([](double x) { return x - x * x * x - 0.3; }, -2.0, -0.6);
    const double span = 1.0 - C;
    CHECK(b.x_lo == doctest::Approx(C - 0.1 * span).epsilon(1e-10));
    CHECK(b.x_hi == doctest::Approx(1.0 + 0.1 * span).epsilon(1e-10));
    CHECK(b.v_hi == doctest::Approx(2 * (2 * kPi / 3) * span).epsilon(1e-10));
    CHECK(b.v_hi == doctest::Approx(8.90).epsilon(1e-3));
    CHECK(b.v_lo == -b.v_hi);

    SolverConfig cfg;
    cfg.v_range = 2.5;
    cfg.grid_nx = 3;
    CHECK(default_search_box(kP, f, cfg).v_hi == 2.5);
    CHECK(default_search_box(kP, f, cfg).grid_nx == 3);
}

TEST_CASE("enumeration of constant forcing matches the cubic roots") {
    const Forcing h = Forcing::constant(0.2, 3.0);
    const Enumeration e = enumerate_orbits(kP, h, default_search_box(kP, h));
    const auto roots = oracle::cubic_roots(1.0, 0.2);
    REQUIRE(roots.size() == 3);
    REQUIRE(e.orbits.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        const PeriodicOrbit& o = e.orbits[i];
        double err = 0.0;
        for (const auto& s : o.traj.samples) err = std::max({err, std::abs(s.x - roots[i]), std::abs(s.v)});
        CHECK(err <= 1e-8);
        const auto mu = oracle::eig2(oracle::expm2({0.0, 1.0, 3 * roots[i] * roots[i] - 1.0, -1.0}, 3.0));
        // Match as unordered pairs.
        const double d1 = std::abs(o.multipliers[0] - mu[0]) + std::abs(o.multipliers[1] - mu[1]);
        const double d2 = std::abs(o.multipliers[0] - mu[1]) + std::abs(o.multipliers[1] - mu[0]);
        CHECK(std::min(d1, d2) <= 1e-6 * (1 + std::abs(mu[0])));
    }
    CHECK(e.orbits[0].stability == Stability::Unstable);
    CHECK(e.orbits[1].stability == Stability::AsymptoticallyStable);
    CHECK(e.orbits[2].stability == Stability::Unstable);
    CHECK(e.orbits[1].index == 1);
    CHECK(pointwise_order(e.orbits));
}

TEST_CASE("enumeration above the critical level finds the single negative root") {
    const Forcing h = Forcing::constant(0.5, 3.0);
    const Enumeration e = enumerate_orbits(kP, h, default_search_box(kP, h));
    const auto roots = oracle::cubic_roots(1.0, 0.5);
    REQUIRE(roots.size() == 1);
    CHECK(roots[0] < 0.0);
    REQUIRE(e.orbits.size() == 1);
    CHECK(std::abs(e.orbits[0].z0.x - roots[0]) <= 1e-8);
    CHECK(std::abs(e.orbits[0].z0.v) <= 1e-8);
    CHECK(e.orbits[0].index == -1);
}

TEST_CASE("empty grid yields nothing") {
    const Forcing h = Forcing::constant(0.2, 3.0);
    SolverConfig cfg;
    cfg.slice_starts = 0;
    SearchBox box = default_search_box(kP, h, cfg);
    box.grid_nx = 0;
    box.grid_nv = 0;
    const Enumeration e = enumerate_orbits(kP, h, box, cfg);
    CHECK(e.orbits.empty());
    CHECK(e.diagnostics.starts == 0);
}

TEST_CASE("orbit invariants on the cosine case") {
    const Forcing h = cosine_below();
    const Enumeration e = enumerate_orbits(kP, h, default_search_box(kP, h));
    REQUIRE(e.orbits.size() == 3);
    CHECK(pointwise_order(e.orbits));
    const double det = std::exp(-3.0);
    for (const auto& o : e.orbits) {
        CHECK(o.residual <= 1e-10);
        CHECK(std::abs((o.multipliers[0] * o.multipliers[1]).real() - det) <= 1e-6 * det);
        CHECK(std::abs(o.monodromy.det() - det) <= 1e-6 * det);
        const int expected = is_degenerate(o.monodromy) ? 0 : (o.monodromy.det_i_minus() > 0 ? 1 : -1);
        CHECK(o.index == expected);
        double lo = o.traj.samples[0].x, hi = lo;
        for (const auto& s : o.traj.samples) {
            lo = std::min(lo, s.x);
            hi = std::max(hi, s.x);
        }
        CHECK(o.x_min == lo);
        CHECK(o.x_max == hi);
        CHECK(o.sign != SignClass::ChangesSign);
        // Stability and index agree while a < (pi/T)^2 + c^2/4.
        CHECK(((o.stability == Stability::AsymptoticallyStable) == (o.index == 1)));
        CHECK(((o.stability == Stability::Unstable) == (o.index == -1)));

        // Two periods bring the orbit back.
        const Trajectory two = integrate(kP, h, 0.0, 6.0, o.z0);
        const Sample& mid = two.samples[512];
        CHECK(mid.t == doctest::Approx(3.0));
        CHECK(sup_diff({mid.x, mid.v}, o.z0) <= 10 * 1e-10);
        CHECK(sup_diff(two.back_state(), o.z0) <= 10 * 1e-10);
    }
}

TEST_CASE("enumeration is deterministic") {
    const Forcing h = cosine_below();
    const SearchBox box = default_search_box(kP, h);
    const Enumeration a = enumerate_orbits(kP, h, box);
    const Enumeration b = enumerate_orbits(kP, h, box);
    REQUIRE(a.orbits.size() == b.orbits.size());
    for (std::size_t i = 0; i < a.orbits.size(); ++i) {
        CHECK(a.orbits[i].z0.x == b.orbits[i].z0.x);
        CHECK(a.orbits[i].z0.v == b.orbits[i].z0.v);
        CHECK(a.orbits[i].residual == b.orbits[i].residual);
    }
    CHECK(a.diagnostics.converged == b.diagnostics.converged);
}

TEST_CASE("classify") {
    SUBCASE("complex pair") {
        const double xs = oracle::cubic_roots(1.0, 0.2)[1];
        CHECK(1.0 - 3 * xs * xs == doctest::Approx(0.868).epsilon(1e-3));
        const auto E = oracle::expm2({0.0, 1.0, 3 * xs * xs - 1.0, -1.0}, 3.0);
        const Classification k = classify({E[0], E[1], E[2], E[3]});
        CHECK(std::abs(k.multipliers[0]) == doctest::Approx(std::exp(-1.5)).epsilon(1e-9));
        CHECK(std::abs(k.multipliers[0].imag()) > 0.0);
        CHECK(k.multipliers[0] == std::conj(k.multipliers[1]));
        CHECK(k.stability == Stability::AsymptoticallyStable);
        CHECK(k.index == 1);
    }
    SUBCASE("saddle") {
        const double xs = oracle::cubic_roots(1.0, 0.2)[2];
        const auto E = oracle::expm2({0.0, 1.0, 3 * xs * xs - 1.0, -1.0}, 3.0);
        const Classification k = classify({E[0], E[1], E[2], E[3]});
        const double big = std::max(std::abs(k.multipliers[0]), std::abs(k.multipliers[1]));
        const double rate = (-1.0 + std::sqrt(1.0 + 4 * (3 * xs * xs - 1.0))) / 2.0;
        CHECK(big == doctest::Approx(std::exp(3 * rate)).epsilon(1e-9));
        CHECK(big == doctest::Approx(9.5).epsilon(0.01));
        CHECK(k.stability == Stability::Unstable);
        CHECK(k.index == -1);
    }
    SUBCASE("marginal and degenerate") {
        const Classification k = classify(Monodromy::identity());
        CHECK(k.stability == Stability::Marginal);
        CHECK(k.index == 0);
        const Classification r = classify({0.5, 0.0, 0.0, 1.0 + 1e-8});
        CHECK(r.stability == Stability::Marginal);
    }
    SUBCASE("complex multipliers with positive damping are stable") {
        for (double t : {0.3, 1.1, 2.0, 2.9}) {
            const double r = std::exp(-0.5);
            const Monodromy m{r * std::cos(t), -r * std::sin(t), r * std::sin(t), r * std::cos(t)};
            const Classification k = classify(m);
            CHECK(k.stability == Stability::AsymptoticallyStable);
            CHECK(k.index == 1);
        }
    }
}

TEST_CASE("pointwise_order") {
    const auto roots = oracle::cubic_roots(1.0, 0.2);
    std::vector<PeriodicOrbit> orbits;
    for (double r : roots) orbits.push_back(constant_orbit(r));
    CHECK(pointwise_order(orbits));
    CHECK(pointwise_order({orbits[0]}));
    CHECK(pointwise_order({}));
    std::swap(orbits[0], orbits[1]);
    CHECK_FALSE(pointwise_order(orbits));

    PeriodicOrbit wavy = constant_orbit(0.0);
    for (auto& s : wavy.traj.samples) s.x = std::sin(2 * kPi * s.t / 3.0);
    CHECK_FALSE(pointwise_order({constant_orbit(0.0), wavy}));
}

}
