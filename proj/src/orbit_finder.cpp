#include "duffing/orbit_finder.hpp"

#include <algorithm>
#include <cmath>

namespace duffing {

double SearchBox::diameter() const noexcept { return std::hypot(x_hi - x_lo, v_hi - v_lo); }

bool SearchBox::contains(State s, double factor) const noexcept {
    const double xc = 0.5 * (x_lo + x_hi), vc = 0.5 * (v_lo + v_hi);
    const double xr = 0.5 * (x_hi - x_lo) * factor, vr = 0.5 * (v_hi - v_lo) * factor;
    return std::abs(s.x - xc) <= xr && std::abs(s.v - vc) <= vr;
}

std::string_view to_string(Stability s) noexcept {
    switch (s) {
        case Stability::AsymptoticallyStable: return "AsymptoticallyStable";
        case Stability::Unstable: return "Unstable";
        case Stability::Marginal: return "Marginal";
    }
    return "Marginal";
}

std::string_view to_string(ShootStatus s) noexcept {
    switch (s) {
        case ShootStatus::Converged: return "Converged";
        case ShootStatus::NoConvergence: return "NoConvergence";
        case ShootStatus::SingularJacobian: return "SingularJacobian";
        case ShootStatus::EscapedBox: return "EscapedBox";
        case ShootStatus::IntegrationFailure: return "IntegrationFailure";
    }
    return "NoConvergence";
}

Classification classify(const Monodromy& m) noexcept {
    Classification out;
    const double tr = m.trace(), det = m.det();
    const double disc = tr * tr - 4.0 * det;
    if (disc >= 0.0) {
        const double q = 0.5 * (tr + std::copysign(std::sqrt(disc), tr));
        const double l1 = q;
        const double l2 = q != 0.0 ? det / q : 0.0;
        out.multipliers = {std::complex<double>(std::max(l1, l2)), std::complex<double>(std::min(l1, l2))};
    } else {
        const double im = 0.5 * std::sqrt(-disc);
        out.multipliers = {std::complex<double>(0.5 * tr, im), std::complex<double>(0.5 * tr, -im)};
    }
    const double rho = std::max(std::abs(out.multipliers[0]), std::abs(out.multipliers[1]));
    if (rho < 1.0 - kMarginalTolerance)
        out.stability = Stability::AsymptoticallyStable;
    else if (rho > 1.0 + kMarginalTolerance)
        out.stability = Stability::Unstable;
    else
        out.stability = Stability::Marginal;
    out.index = is_degenerate(m) ? 0 : (m.det_i_minus() > 0.0 ? 1 : -1);
    return out;
}

FlowResult poincare_map(const DuffingParams& params, const Forcing& forcing, State z0,
                        Tolerances tol) {
    return integrate_with_variational(params, forcing, 0.0, params.period(), z0, tol);
}

PeriodicOrbit make_orbit(const DuffingParams& params, const Forcing& forcing, State z0,
                         const Monodromy& m, double residual, const SolverConfig& config) {
    PeriodicOrbit o;
    o.z0 = z0;
    o.residual = residual;
    o.monodromy = m;
    o.traj = integrate(params, forcing, 0.0, params.period(), z0, config.tolerances,
                       config.samples_per_period);
    o.x_min = o.traj.x_min();
    o.x_max = o.traj.x_max();
    o.sign = sign_classify(o.traj);
    const Classification cls = classify(m);
    o.multipliers = cls.multipliers;
    o.index = cls.index;
    o.stability = cls.stability;
    return o;
}

namespace {

struct Evaluation {
    State g;
    Monodromy m;
    double norm = 0.0;
};

Evaluation evaluate(const DuffingParams& params, const Forcing& forcing, State z,
                    const SolverConfig& config) {
    const FlowResult f = poincare_map(params, forcing, z, config.tolerances);
    if (config.on_monodromy) config.on_monodromy(f.monodromy);
    Evaluation e;
    e.g = {f.end.x - z.x, f.end.v - z.v};
    e.m = f.monodromy;
    e.norm = std::max(std::abs(e.g.x), std::abs(e.g.v));
    if (!std::isfinite(e.norm)) throw IntegrationFailure("non-finite return map", 0.0, z);
    return e;
}

// Newton step -J^{-1} G with J = M - I; nullopt when J is singular.
std::optional<State> newton_step(const Evaluation& e) {
    const Monodromy& m = e.m;
    const double det = m.det_i_minus();  // det(M - I) == det(I - M) for 2x2
    if (std::abs(det) <= degeneracy_threshold(m)) return std::nullopt;
    // (I - M) dz = G
    return State{((1.0 - m.m22) * e.g.x + m.m12 * e.g.v) / det,
                 (m.m21 * e.g.x + (1.0 - m.m11) * e.g.v) / det};
}

}  // namespace

ShootResult newton_shoot(const DuffingParams& params, const Forcing& forcing, State z_init,
                         const SolverConfig& config, const SearchBox* box) {
    if (!(config.newton_tol > 0.0)) throw DomainError("newton_tol must be positive");
    if (config.max_iter < 1) throw DomainError("max_iter must be >= 1");
    constexpr int kMaxHalvings = 8;

    ShootResult res;
    res.last = z_init;
    State z = z_init;
    Evaluation cur;
    try {
        cur = evaluate(params, forcing, z, config);
    } catch (const IntegrationFailure&) {
        res.status = ShootStatus::IntegrationFailure;
        return res;
    }

    auto finish = [&](ShootStatus st) {
        res.status = st;
        res.residual = cur.norm;
        res.last = z;
        return res;
    };

    for (int iter = 0;; ++iter) {
        res.iterations = iter;
        if (cur.norm <= config.newton_tol) {
            // One polishing step; kept only if it helps.
            if (auto dz = newton_step(cur)) {
                const State zp{z.x + dz->x, z.v + dz->v};
                try {
                    Evaluation e = evaluate(params, forcing, zp, config);
                    if (e.norm < cur.norm) {
                        z = zp;
                        cur = e;
                    }
                } catch (const IntegrationFailure&) {
                }
            }
            finish(ShootStatus::Converged);
            try {
                res.orbit = make_orbit(params, forcing, z, cur.m, cur.norm, config);
                res.orbit->iterations = iter;
            } catch (const IntegrationFailure&) {
                return finish(ShootStatus::IntegrationFailure);
            }
            return res;
        }
        if (iter >= config.max_iter) return finish(ShootStatus::NoConvergence);

        const auto dz = newton_step(cur);
        if (!dz) return finish(ShootStatus::SingularJacobian);

        double lambda = 1.0;
        bool any_eval = false;
        bool left_box = false;
        State z_good = z;
        Evaluation e_good;
        for (int half = 0; half <= kMaxHalvings; ++half, lambda *= 0.5) {
            const State z_try{z.x + lambda * dz->x, z.v + lambda * dz->v};
            if (box && !box->contains(z_try, 2.0)) {
                left_box = true;
                continue;
            }
            try {
                e_good = evaluate(params, forcing, z_try, config);
            } catch (const IntegrationFailure&) {
                continue;
            }
            any_eval = true;
            z_good = z_try;
            if (e_good.norm < cur.norm) break;
        }
        if (!any_eval)
            return finish(left_box ? ShootStatus::EscapedBox : ShootStatus::IntegrationFailure);
        // Without a decrease at the smallest damping the last trial is taken
        // anyway and the iteration budget decides.
        z = z_good;
        cur = e_good;
    }
}

SearchBox default_search_box(const DuffingParams& params, const Forcing& forcing,
                             const SolverConfig& config) {
    const Range r = forcing_range(forcing);
    const double sqrt_a = std::sqrt(params.a());
    const double hmax = std::max(std::abs(r.lo), std::abs(r.hi));
    // min x >= C with g(C) = |h|_inf holds for any forcing; max x <= sqrt(a)
    // needs h > 0, otherwise the odd symmetry of g gives max x <= -C.
    const double C = hmax > 0.0 ? negative_root_bound(params.a(), hmax) : -sqrt_a;
    const double upper = r.lo > 0.0 ? sqrt_a : -C;
    const double span = upper - C;
    const double V = config.v_range ? *config.v_range : 2.0 * (2.0 * kPi / params.period()) * span;
    SearchBox box;
    box.x_lo = C - 0.1 * span;
    box.x_hi = upper + 0.1 * span;
    box.v_lo = -V;
    box.v_hi = V;
    box.grid_nx = config.grid_nx;
    box.grid_nv = config.grid_nv;
    return box;
}

Enumeration enumerate_orbits(const DuffingParams& params, const Forcing& forcing,
                             const SearchBox& box, const SolverConfig& config) {
    if (!(box.x_lo < box.x_hi && box.v_lo < box.v_hi)) throw DomainError("degenerate search box");

    std::vector<State> starts;
    starts.reserve(box.grid_nx * box.grid_nv + config.slice_starts);
    const double dx = (box.x_hi - box.x_lo) / static_cast<double>(std::max<std::size_t>(box.grid_nx, 1));
    const double dv = (box.v_hi - box.v_lo) / static_cast<double>(std::max<std::size_t>(box.grid_nv, 1));
    for (std::size_t i = 0; i < box.grid_nx; ++i)
        for (std::size_t j = 0; j < box.grid_nv; ++j)
            starts.push_back({box.x_lo + (static_cast<double>(i) + 0.5) * dx,
                              box.v_lo + (static_cast<double>(j) + 0.5) * dv});
    const double ds = (box.x_hi - box.x_lo) / static_cast<double>(std::max<std::size_t>(config.slice_starts, 1));
    for (std::size_t k = 0; k < config.slice_starts; ++k)
        starts.push_back({box.x_lo + (static_cast<double>(k) + 0.5) * ds, 0.0});

    Enumeration out;
    out.dedup_tol = config.dedup_tol ? *config.dedup_tol : 1e-6 * (1.0 + box.diameter());
    out.diagnostics.starts = starts.size();

    for (const State& s : starts) {
        ShootResult r = newton_shoot(params, forcing, s, config, &box);
        switch (r.status) {
            case ShootStatus::Converged: break;
            case ShootStatus::NoConvergence: ++out.diagnostics.no_convergence; continue;
            case ShootStatus::SingularJacobian: ++out.diagnostics.singular; continue;
            case ShootStatus::EscapedBox: ++out.diagnostics.escaped; continue;
            case ShootStatus::IntegrationFailure: ++out.diagnostics.integration_failures; continue;
        }
        ++out.diagnostics.converged;
        const PeriodicOrbit& o = *r.orbit;
        const bool dup = std::any_of(out.orbits.begin(), out.orbits.end(), [&](const PeriodicOrbit& q) {
            return std::max(std::abs(q.z0.x - o.z0.x), std::abs(q.z0.v - o.z0.v)) < out.dedup_tol;
        });
        if (dup) {
            ++out.diagnostics.duplicates;
            continue;
        }
        out.orbits.push_back(std::move(*r.orbit));
    }

    std::stable_sort(out.orbits.begin(), out.orbits.end(),
                     [](const PeriodicOrbit& l, const PeriodicOrbit& r) { return l.x_min < r.x_min; });
    return out;
}

bool pointwise_order(const std::vector<PeriodicOrbit>& orbits) {
    for (std::size_t i = 0; i + 1 < orbits.size(); ++i) {
        const auto& lo = orbits[i].traj.samples;
        const auto& hi = orbits[i + 1].traj.samples;
        if (lo.size() != hi.size()) return false;
        for (std::size_t k = 0; k < lo.size(); ++k)
            if (!(lo[k].x < hi[k].x)) return false;
    }
    return true;
}

}  // namespace duffing
