#include "duffing/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "duffing/config.hpp"

namespace duffing {

using nlohmann::json;

json orbit_to_json(const PeriodicOrbit& o) {
    const Monodromy& m = o.monodromy;
    json mult = json::array();
    for (const auto& mu : o.multipliers) mult.push_back({{"re", mu.real()}, {"im", mu.imag()}});
    return {{"z0", {{"x", o.z0.x}, {"v", o.z0.v}}},
            {"residual", o.residual},
            {"monodromy", {{m.m11, m.m12}, {m.m21, m.m22}}},
            {"multipliers", mult},
            {"index", o.index},
            {"stability", std::string(to_string(o.stability))},
            {"sign", std::string(to_string(o.sign))},
            {"x_min", o.x_min},
            {"x_max", o.x_max},
            {"iterations", o.iterations}};
}

json check_to_json(const CheckResult& c) {
    return {{"name", c.name},         {"passed", c.passed},     {"expected", c.expected},
            {"observed", c.observed}, {"paper_anchor", c.paper_anchor},
            {"category", c.category}, {"enforced", c.enforced}, {"boundary", c.boundary}};
}

json diagnostics_to_json(const EnumerationDiagnostics& d) {
    return {{"starts", d.starts},
            {"converged", d.converged},
            {"duplicates", d.duplicates},
            {"no_convergence", d.no_convergence},
            {"singular_jacobian", d.singular},
            {"escaped_box", d.escaped},
            {"integration_failures", d.integration_failures}};
}

json to_json(const VerificationReport& r) {
    json orbits = json::array();
    for (const auto& o : r.orbits) orbits.push_back(orbit_to_json(o));
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back(check_to_json(c));

    json diag = diagnostics_to_json(r.diagnostics);
    diag["forcing_range"] = {r.forcing_range.lo, r.forcing_range.hi};
    diag["h0"] = r.profile.h0;
    diag["b"] = r.profile.b;
    diag["C"] = r.profile.C;
    diag["lambda1"] = r.params.lambda1();
    diag["lambda2"] = r.params.lambda2();
    diag["search_box"] = {{"x", {r.box.x_lo, r.box.x_hi}},
                          {"v", {r.box.v_lo, r.box.v_hi}},
                          {"grid", {r.box.grid_nx, r.box.grid_nv}}};
    diag["retried_denser_grid"] = r.retried;
    diag["completeness"] = "heuristic: multi-start shooting inside the a-priori box";

    return {{"params", {{"a", r.params.a()}, {"c", r.params.c()}, {"T", r.params.period()}}},
            {"forcing", fourier_to_json(r.forcing)},
            {"regime", std::string(to_string(r.regime))},
            {"damping_ok", r.damping_ok},
            {"orbits", orbits},
            {"checks", checks},
            {"degree_sum", r.degree_sum},
            {"diagnostics", diag}};
}

void write_trajectory_csv(std::ostream& out, const std::vector<Sample>& samples, int precision) {
    out << "t,x,v\n";
    char buf[128];
    for (const auto& s : samples) {
        std::snprintf(buf, sizeof buf, "%.*g,%.*g,%.*g\n", precision, s.t, precision, s.x, precision, s.v);
        out << buf;
    }
}

std::string phase_svg(const std::vector<PeriodicOrbit>& orbits) {
    constexpr double W = 640, H = 480, M = 48;
    double xlo = -1, xhi = 1, vlo = -1, vhi = 1;
    bool first = true;
    for (const auto& o : orbits)
        for (const auto& s : o.traj.samples) {
            if (first) {
                xlo = xhi = s.x;
                vlo = vhi = s.v;
                first = false;
            }
            xlo = std::min(xlo, s.x);
            xhi = std::max(xhi, s.x);
            vlo = std::min(vlo, s.v);
            vhi = std::max(vhi, s.v);
        }
    const double px = 0.05 * std::max(xhi - xlo, 1e-3), pv = 0.05 * std::max(vhi - vlo, 1e-3);
    xlo -= px, xhi += px, vlo -= pv, vhi += pv;
    auto sx = [&](double x) { return M + (x - xlo) / (xhi - xlo) * (W - 2 * M); };
    auto sy = [&](double v) { return H - M - (v - vlo) / (vhi - vlo) * (H - 2 * M); };

    std::ostringstream os;
    os.precision(6);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    os << "<g id=\"axes\" stroke=\"#888\" stroke-width=\"1\">\n";
    os << "<rect x=\"" << M << "\" y=\"" << M << "\" width=\"" << W - 2 * M << "\" height=\"" << H - 2 * M
       << "\" fill=\"none\"/>\n";
    if (xlo < 0 && xhi > 0)
        os << "<line x1=\"" << sx(0) << "\" y1=\"" << M << "\" x2=\"" << sx(0) << "\" y2=\"" << H - M << "\"/>\n";
    if (vlo < 0 && vhi > 0)
        os << "<line x1=\"" << M << "\" y1=\"" << sy(0) << "\" x2=\"" << W - M << "\" y2=\"" << sy(0) << "\"/>\n";
    os << "</g>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\" font-size=\"14\">x</text>\n";
    os << "<text x=\"14\" y=\"" << H / 2 << "\" font-size=\"14\">v</text>\n";
    os << "<text x=\"" << M << "\" y=\"" << H - M + 16 << "\" font-size=\"11\">" << xlo << "</text>\n";
    os << "<text x=\"" << W - M << "\" y=\"" << H - M + 16 << "\" font-size=\"11\" text-anchor=\"end\">" << xhi
       << "</text>\n";

    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    for (std::size_t i = 0; i < orbits.size(); ++i) {
        const auto& o = orbits[i];
        const char* col = colors[i % 6];
        const bool stable = o.stability == Stability::AsymptoticallyStable;
        os << "<polyline class=\"orbit\" fill=\"none\" stroke=\"" << col << "\" stroke-width=\"2\""
           << (stable ? "" : " stroke-dasharray=\"6,4\"") << " points=\"";
        for (const auto& s : o.traj.samples) os << sx(s.x) << ',' << sy(s.v) << ' ';
        os << "\"/>\n";
        os << "<circle class=\"fixed-point\" cx=\"" << sx(o.z0.x) << "\" cy=\"" << sy(o.z0.v)
           << "\" r=\"4\" fill=\"" << col << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace duffing
