#include "duffing/config.hpp"

#include <fstream>
#include <initializer_list>
#include <set>

namespace duffing {

using nlohmann::json;

namespace {

void require_object(const json& j, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
}

void reject_unknown(const json& j, const std::string& where,
                    std::initializer_list<const char*> allowed) {
    const std::set<std::string> keys(allowed.begin(), allowed.end());
    for (const auto& [k, _] : j.items())
        if (!keys.count(k)) throw ConfigError(where + ": unknown key '" + k + "'");
}

double get_number(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key)) throw ConfigError(where + ": missing '" + key + "'");
    if (!j[key].is_number()) throw ConfigError(where + "." + key + ": expected a number");
    return j[key].get<double>();
}

double number_or(const json& j, const std::string& key, const std::string& where, double dflt) {
    return j.contains(key) ? get_number(j, key, where) : dflt;
}

std::size_t count_or(const json& j, const std::string& key, const std::string& where,
                     std::size_t dflt) {
    if (!j.contains(key)) return dflt;
    if (!j[key].is_number_integer() || j[key].get<long long>() < 0)
        throw ConfigError(where + "." + key + ": expected a non-negative integer");
    return j[key].get<std::size_t>();
}

std::optional<double> optional_number(const json& j, const std::string& key,
                                      const std::string& where) {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    return get_number(j, key, where);
}

std::vector<double> number_list(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key)) return {};
    if (!j[key].is_array()) throw ConfigError(where + "." + key + ": expected an array");
    std::vector<double> out;
    for (const auto& v : j[key]) {
        if (!v.is_number()) throw ConfigError(where + "." + key + ": expected numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

Fourier parse_fourier(const json& j, const std::string& where, double period) {
    require_object(j, where);
    reject_unknown(j, where, {"mean", "cos", "sin"});
    try {
        return Fourier(get_number(j, "mean", where), number_list(j, "cos", where),
                       number_list(j, "sin", where), period);
    } catch (const DomainError& e) {
        throw ConfigError(where + ": " + e.what());
    }
}

bool same_fourier(const Fourier& l, const Fourier& r) {
    return l.mean() == r.mean() && l.cos_coeffs() == r.cos_coeffs() &&
           l.sin_coeffs() == r.sin_coeffs() && l.period() == r.period();
}

}  // namespace

json fourier_to_json(const Fourier& f) {
    return {{"mean", f.mean()}, {"cos", f.cos_coeffs()}, {"sin", f.sin_coeffs()}};
}

RunConfig parse_config(const json& j) {
    require_object(j, "config");
    reject_unknown(j, "config", {"params", "forcing", "solver", "output", "linear"});
    if (!j.contains("params")) throw ConfigError("config: missing 'params'");
    if (!j.contains("forcing")) throw ConfigError("config: missing 'forcing'");

    const json& jp = j["params"];
    require_object(jp, "params");
    reject_unknown(jp, "params", {"a", "c", "T"});
    std::optional<DuffingParams> params;
    try {
        params.emplace(get_number(jp, "a", "params"), get_number(jp, "c", "params"),
                       get_number(jp, "T", "params"));
    } catch (const DomainError& e) {
        throw ConfigError(std::string("params: ") + e.what());
    }
    const double T = params->period();

    SolverConfig solver;
    if (j.contains("solver")) {
        const json& js = j["solver"];
        const std::string w = "solver";
        require_object(js, w);
        reject_unknown(js, w, {"rtol", "atol", "newton_tol", "max_iter", "grid_nx", "grid_nv",
                               "v_range", "dedup_tol", "samples_per_period", "slice_starts"});
        solver.tolerances.rtol = number_or(js, "rtol", w, solver.tolerances.rtol);
        solver.tolerances.atol = number_or(js, "atol", w, solver.tolerances.atol);
        solver.newton_tol = number_or(js, "newton_tol", w, solver.newton_tol);
        solver.max_iter = static_cast<int>(count_or(js, "max_iter", w, solver.max_iter));
        solver.grid_nx = count_or(js, "grid_nx", w, solver.grid_nx);
        solver.grid_nv = count_or(js, "grid_nv", w, solver.grid_nv);
        solver.v_range = optional_number(js, "v_range", w);
        solver.dedup_tol = optional_number(js, "dedup_tol", w);
        solver.samples_per_period = count_or(js, "samples_per_period", w, solver.samples_per_period);
        solver.slice_starts = count_or(js, "slice_starts", w, solver.slice_starts);
    }
    if (!(solver.tolerances.rtol > 0.0 && solver.tolerances.atol > 0.0))
        throw ConfigError("solver: tolerances must be positive");
    if (!(solver.newton_tol > 0.0)) throw ConfigError("solver.newton_tol must be positive");
    if (solver.max_iter < 1) throw ConfigError("solver.max_iter must be >= 1");
    if (solver.samples_per_period < 1) throw ConfigError("solver.samples_per_period must be >= 1");
    if (solver.v_range && !(*solver.v_range > 0.0)) throw ConfigError("solver.v_range must be > 0");
    if (solver.dedup_tol && !(*solver.dedup_tol > 0.0)) throw ConfigError("solver.dedup_tol must be > 0");

    OutputConfig output;
    if (j.contains("output")) {
        const json& jo = j["output"];
        require_object(jo, "output");
        reject_unknown(jo, "output", {"directory", "precision"});
        if (jo.contains("directory")) {
            if (!jo["directory"].is_string()) throw ConfigError("output.directory: expected a string");
            output.directory = jo["directory"].get<std::string>();
        }
        output.precision = static_cast<int>(count_or(jo, "precision", "output", 17));
        if (output.precision < 1 || output.precision > 17)
            throw ConfigError("output.precision must be in [1, 17]");
    }

    std::optional<LinearConfig> linear;
    if (j.contains("linear")) {
        const json& jl = j["linear"];
        require_object(jl, "linear");
        reject_unknown(jl, "linear", {"alpha", "h"});
        if (!jl.contains("alpha")) throw ConfigError("linear: missing 'alpha'");
        LinearConfig lc{parse_fourier(jl["alpha"], "linear.alpha", T), std::nullopt};
        if (jl.contains("h")) lc.h = parse_fourier(jl["h"], "linear.h", T);
        linear = std::move(lc);
    }

    return RunConfig{*params, parse_fourier(j["forcing"], "forcing", T), std::move(solver),
                     std::move(output), std::move(linear)};
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("malformed JSON in '" + path.string() + "': " + e.what());
    }
    return parse_config(j);
}

json to_json(const RunConfig& cfg) {
    const SolverConfig& s = cfg.solver;
    json j;
    j["params"] = {{"a", cfg.params.a()}, {"c", cfg.params.c()}, {"T", cfg.params.period()}};
    j["forcing"] = fourier_to_json(cfg.forcing);
    j["solver"] = {{"rtol", s.tolerances.rtol},
                   {"atol", s.tolerances.atol},
                   {"newton_tol", s.newton_tol},
                   {"max_iter", s.max_iter},
                   {"grid_nx", s.grid_nx},
                   {"grid_nv", s.grid_nv},
                   {"v_range", s.v_range ? json(*s.v_range) : json(nullptr)},
                   {"dedup_tol", s.dedup_tol ? json(*s.dedup_tol) : json(nullptr)},
                   {"samples_per_period", s.samples_per_period},
                   {"slice_starts", s.slice_starts}};
    j["output"] = {{"directory", cfg.output.directory}, {"precision", cfg.output.precision}};
    if (cfg.linear) {
        json jl;
        jl["alpha"] = fourier_to_json(cfg.linear->alpha);
        if (cfg.linear->h) jl["h"] = fourier_to_json(*cfg.linear->h);
        j["linear"] = std::move(jl);
    }
    return j;
}

bool operator==(const RunConfig& l, const RunConfig& r) {
    const SolverConfig &a = l.solver, &b = r.solver;
    const bool solver_eq = a.tolerances.rtol == b.tolerances.rtol &&
                           a.tolerances.atol == b.tolerances.atol && a.newton_tol == b.newton_tol &&
                           a.max_iter == b.max_iter && a.grid_nx == b.grid_nx &&
                           a.grid_nv == b.grid_nv && a.v_range == b.v_range &&
                           a.dedup_tol == b.dedup_tol &&
                           a.samples_per_period == b.samples_per_period &&
                           a.slice_starts == b.slice_starts;
    const bool linear_eq =
        l.linear.has_value() == r.linear.has_value() &&
        (!l.linear || (same_fourier(l.linear->alpha, r.linear->alpha) &&
                       l.linear->h.has_value() == r.linear->h.has_value() &&
                       (!l.linear->h || same_fourier(*l.linear->h, *r.linear->h))));
    return l.params.a() == r.params.a() && l.params.c() == r.params.c() &&
           l.params.period() == r.params.period() && same_fourier(l.forcing, r.forcing) &&
           solver_eq && l.output.directory == r.output.directory &&
           l.output.precision == r.output.precision && linear_eq;
}

}  // namespace duffing
