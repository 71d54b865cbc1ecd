#include "duffing/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "duffing/linear_periodic.hpp"
#include "duffing/report.hpp"
#include "duffing/verifier.hpp"

namespace duffing {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path out_dir(const RunConfig& cfg) {
    fs::path dir(cfg.output.directory);
    fs::create_directories(dir);
    return dir;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    out << text;
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

void write_csv(const fs::path& path, const std::vector<Sample>& samples, int precision) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    write_trajectory_csv(out, samples, precision);
}

// Shared error boundary: config and domain errors become exit 2.
template <class F>
int guarded(std::ostream& diag, F&& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        diag << "config error: " << e.what() << '\n';
    } catch (const DomainError& e) {
        diag << "invalid input: " << e.what() << '\n';
    } catch (const fs::filesystem_error& e) {
        diag << "filesystem error: " << e.what() << '\n';
    }
    return kExitUsage;
}

char stability_letter(Stability s) {
    switch (s) {
        case Stability::AsymptoticallyStable: return 'S';
        case Stability::Unstable: return 'U';
        case Stability::Marginal: return 'M';
    }
    return 'M';
}

}  // namespace

AxisSpec parse_axis(std::string_view spec, std::size_t default_steps) {
    std::vector<std::string> parts;
    std::stringstream ss{std::string(spec)};
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() != 3 && parts.size() != 4)
        throw ConfigError("axis '" + std::string(spec) + "': expected name:lo:hi[:steps]");
    AxisSpec ax;
    ax.name = parts[0];
    if (ax.name != "a" && ax.name != "c" && ax.name != "mean" && ax.name != "amplitude")
        throw ConfigError("axis name must be one of a, c, mean, amplitude");
    try {
        ax.lo = std::stod(parts[1]);
        ax.hi = std::stod(parts[2]);
        ax.steps = parts.size() == 4 ? std::stoul(parts[3]) : default_steps;
    } catch (const std::exception&) {
        throw ConfigError("axis '" + std::string(spec) + "': bad number");
    }
    if (ax.steps == 0) throw ConfigError("axis '" + ax.name + "': steps must be >= 1");
    if (!(std::isfinite(ax.lo) && std::isfinite(ax.hi)))
        throw ConfigError("axis '" + ax.name + "': bounds must be finite");
    return ax;
}

int cmd_verify(const RunConfig& cfg, std::ostream& diag) {
    return guarded(diag, [&] {
        const VerificationReport rep = verify(cfg.params, cfg.forcing, cfg.solver);
        write_json(out_dir(cfg) / "report.json", to_json(rep));
        if (rep.regime == Regime::Mixed || rep.regime == Regime::Invalid) return int(kExitOk);
        for (const auto& c : rep.checks)
            if (c.enforced && !c.passed)
                diag << "check failed: " << c.name << " expected " << c.expected << ", observed "
                     << c.observed << '\n';
        return rep.passed() ? int(kExitOk) : int(kExitAssertion);
    });
}

int cmd_orbits(const RunConfig& cfg, std::ostream& diag) {
    return guarded(diag, [&] {
        const SearchBox box = default_search_box(cfg.params, cfg.forcing, cfg.solver);
        const Enumeration en = enumerate_orbits(cfg.params, cfg.forcing, box, cfg.solver);
        const fs::path dir = out_dir(cfg);
        json orbits = json::array();
        for (std::size_t i = 0; i < en.orbits.size(); ++i) {
            const std::string name = "orbit_" + std::to_string(i) + ".csv";
            write_csv(dir / name, en.orbits[i].traj.samples, cfg.output.precision);
            json o = orbit_to_json(en.orbits[i]);
            o["csv"] = name;
            orbits.push_back(std::move(o));
        }
        const json j = {{"params", {{"a", cfg.params.a()}, {"c", cfg.params.c()}, {"T", cfg.params.period()}}},
                        {"forcing", fourier_to_json(cfg.forcing)},
                        {"regime", std::string(to_string(classify_regime(cfg.params, cfg.forcing)))},
                        {"orbits", orbits},
                        {"assertions", json::array()},
                        {"diagnostics", diagnostics_to_json(en.diagnostics)}};
        write_json(dir / "orbits.json", j);
        return int(kExitOk);
    });
}

int cmd_simulate(const RunConfig& cfg, double x0, double v0, double t_end, std::ostream& diag) {
    return guarded(diag, [&] {
        if (!(t_end > 0.0) || !std::isfinite(x0) || !std::isfinite(v0))
            throw ConfigError("simulate needs finite x0, v0 and t_end > 0");
        const auto n = static_cast<std::size_t>(std::max(
            1.0, std::ceil(static_cast<double>(cfg.solver.samples_per_period) * t_end / cfg.params.period() - 1e-9)));
        const fs::path path = out_dir(cfg) / "trajectory.csv";
        try {
            const Trajectory tr = integrate(cfg.params, cfg.forcing, 0.0, t_end, {x0, v0},
                                            cfg.solver.tolerances, n);
            write_csv(path, tr.samples, cfg.output.precision);
            return int(kExitOk);
        } catch (const IntegrationFailure& f) {
            write_csv(path, f.partial(), cfg.output.precision);
            diag << "integration failed at t = " << f.t() << ": " << f.what() << '\n';
            return int(kExitAssertion);
        }
    });
}

int cmd_linear(const RunConfig& cfg, std::ostream& diag) {
    return guarded(diag, [&] {
        if (!cfg.linear) throw ConfigError("linear command needs a 'linear' section with 'alpha'");
        const double c = cfg.params.c(), T = cfg.params.period();
        const Tolerances tol = cfg.solver.tolerances;
        const HillCoefficient& alpha = cfg.linear->alpha;
        const Forcing h = cfg.linear->h ? *cfg.linear->h : cfg.forcing;
        const Range ar = forcing_range(alpha);
        const Range hr = forcing_range(h);

        json j;
        json assertions = json::array();
        bool ok = true;
        auto assert_that = [&](const std::string& name, bool passed, const std::string& detail) {
            assertions.push_back({{"name", name}, {"passed", passed}, {"detail", detail}});
            ok = ok && passed;
        };

        const Monodromy m = monodromy_linear(alpha, c, T, tol);
        j["params"] = {{"c", c}, {"T", T}, {"lambda1", cfg.params.lambda1()}, {"lambda2", cfg.params.lambda2()}};
        j["alpha"] = fourier_to_json(alpha);
        j["alpha_range"] = {ar.lo, ar.hi};
        j["h"] = fourier_to_json(h);
        j["monodromy"] = {{m.m11, m.m12}, {m.m21, m.m22}};
        j["det_monodromy"] = m.det();
        j["abel_expected"] = std::exp(-c * T);
        j["det_i_minus_m"] = m.det_i_minus();
        const bool degenerate = is_degenerate(m);
        j["degenerate"] = degenerate;
        assert_that("abel_identity", std::abs(m.det() - std::exp(-c * T)) <= 1e-6 * std::exp(-c * T),
                    "det M = exp(-cT)");
        assert_that("nondegenerate", !degenerate, "|det(I - M)| > 1e-8 (1 + |M|)");

        if (!degenerate) {
            const int index = m.det_i_minus() > 0.0 ? 1 : -1;
            j["index"] = index;
            if (ar.hi < cfg.params.lambda2() && (ar.lo > 0.0 || ar.hi < 0.0)) {
                const int expected = ar.lo > 0.0 ? 1 : -1;
                assert_that("operator_index", index == expected,
                            "bound lambda2; expected " + std::to_string(expected));
            }
            const LinearPeriodicSolution sol = solve_linear_periodic(alpha, c, h, T, tol, cfg.solver.samples_per_period);
            j["solution"] = {{"x0", sol.initial.x},
                             {"v0", sol.initial.v},
                             {"residual", sol.residual},
                             {"x_min", sol.trajectory.x_min()},
                             {"x_max", sol.trajectory.x_max()},
                             {"sign", std::string(to_string(sign_classify(sol.trajectory)))}};
            assert_that("periodic_residual", sol.residual <= 1e-8, "endpoint mismatch <= 1e-8");
            if (hr.lo > 0.0) {
                const MaximumPrincipleResult mp = maximum_principle_check(alpha, c, h, T, tol);
                j["maximum_principle"] = {{"outcome", std::string(to_string(mp.outcome))},
                                          {"bound", mp.bound},
                                          {"bound_name", "lambda1"},
                                          {"hypothesis_ok", mp.hypothesis_ok},
                                          {"asserted", mp.asserted}};
                if (mp.asserted) assert_that("maximum_principle", mp.assertion_passed, "constant sign, bound lambda1");
            }
        }

        const Trajectory w = disconjugacy_witness(alpha, c, T, tol, cfg.solver.samples_per_period);
        const bool positive = witness_positive(w);
        j["disconjugacy_witness"] = {{"positive", positive}, {"hypothesis_ok", ar.hi <= cfg.params.lambda1()}};
        if (ar.hi <= cfg.params.lambda1())
            assert_that("disconjugacy", positive, "witness > 0 on (0, T], bound lambda1");

        j["assertions"] = assertions;
        write_json(out_dir(cfg) / "linear_report.json", j);
        if (!ok)
            for (const auto& a : assertions)
                if (!a["passed"].get<bool>()) diag << "assertion failed: " << a["name"].get<std::string>() << '\n';
        return ok ? int(kExitOk) : int(kExitAssertion);
    });
}

int cmd_sweep(const RunConfig& cfg, const std::vector<AxisSpec>& axes, std::ostream& diag) {
    return guarded(diag, [&] {
        if (axes.empty() || axes.size() > 2) throw ConfigError("sweep needs one or two axes");
        auto value = [](const AxisSpec& ax, std::size_t k) {
            return ax.steps == 1 ? ax.lo
                                 : ax.lo + (ax.hi - ax.lo) * static_cast<double>(k) /
                                               static_cast<double>(ax.steps - 1);
        };
        const std::size_t n2 = axes.size() == 2 ? axes[1].steps : 1;

        std::ostringstream csv;
        csv.precision(17);
        for (const auto& ax : axes) csv << ax.name << ',';
        csv << "regime,damping_ok,orbit_count,degree_sum,stability_pattern\n";

        for (std::size_t i = 0; i < axes[0].steps; ++i) {
            for (std::size_t k = 0; k < n2; ++k) {
                double a = cfg.params.a(), c = cfg.params.c();
                Forcing f = cfg.forcing;
                std::vector<double> vals;
                for (std::size_t ai = 0; ai < axes.size(); ++ai) {
                    const double v = value(axes[ai], ai == 0 ? i : k);
                    vals.push_back(v);
                    const std::string& nm = axes[ai].name;
                    if (nm == "a") a = v;
                    else if (nm == "c") c = v;
                    else if (nm == "mean") f = f.with_mean(v);
                    else {
                        auto cs = f.cos_coeffs();
                        if (cs.empty()) cs.push_back(0.0);
                        cs[0] = v;
                        f = Fourier(f.mean(), cs, f.sin_coeffs(), f.period());
                    }
                }
                const DuffingParams p(a, c, cfg.params.period());
                const VerificationReport rep = verify(p, f, cfg.solver);
                std::string pattern;
                for (const auto& o : rep.orbits) pattern += stability_letter(o.stability);
                for (double v : vals) csv << v << ',';
                csv << to_string(rep.regime) << ',' << (rep.damping_ok ? "true" : "false") << ','
                    << rep.orbits.size() << ',' << rep.degree_sum << ',' << pattern << '\n';
            }
        }
        write_text(out_dir(cfg) / "sweep.csv", csv.str());
        return int(kExitOk);
    });
}

int cmd_phase(const RunConfig& cfg, std::ostream& diag) {
    return guarded(diag, [&] {
        const SearchBox box = default_search_box(cfg.params, cfg.forcing, cfg.solver);
        const Enumeration en = enumerate_orbits(cfg.params, cfg.forcing, box, cfg.solver);
        write_text(out_dir(cfg) / "phase.svg", phase_svg(en.orbits));
        return int(kExitOk);
    });
}

}  // namespace duffing
