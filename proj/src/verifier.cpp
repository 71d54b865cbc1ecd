#include "duffing/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace duffing {

namespace {

std::string num(double v) {
    std::ostringstream os;
    os << std::setprecision(10) << v;
    return os.str();
}

template <class T, class F>
std::string join(const std::vector<T>& items, F&& f) {
    std::string out = "(";
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ", ";
        out += f(items[i]);
    }
    return out + ")";
}

std::string interval(double lo, double hi) { return "(" + num(lo) + ", " + num(hi) + ")"; }

// x_min > lo + tol and x_max < hi - tol; boundary when within tol of an end.
CheckResult inside_open(std::string name, const PeriodicOrbit& o, double lo, double hi,
                        std::string anchor) {
    CheckResult r;
    r.name = std::move(name);
    r.paper_anchor = std::move(anchor);
    r.expected = "orbit range inside " + interval(lo, hi);
    r.observed = "orbit range [" + num(o.x_min) + ", " + num(o.x_max) + "]";
    r.passed = o.x_min > lo + kIntervalTolerance && o.x_max < hi - kIntervalTolerance;
    r.boundary = std::abs(o.x_min - lo) <= kIntervalTolerance || std::abs(o.x_max - hi) <= kIntervalTolerance;
    return r;
}

void append_above(VerificationReport& rep, bool enforced) {
    const auto& orbits = rep.orbits;
    const bool one = orbits.size() == 1;
    std::vector<CheckResult> cs;

    CheckResult count;
    count.name = "count";
    count.expected = "1";
    count.observed = std::to_string(orbits.size());
    count.passed = one;
    count.paper_anchor = "h > h0 => exactly one T-periodic solution";
    cs.push_back(count);

    CheckResult sign;
    sign.name = "sign";
    sign.expected = "Negative";
    sign.observed = one ? std::string(to_string(orbits[0].sign)) : "n/a";
    sign.passed = one && orbits[0].sign == SignClass::Negative;
    sign.paper_anchor = "h > h0 => x(t) < 0";
    cs.push_back(sign);

    CheckResult below_b;
    below_b.name = "max_below_b";
    below_b.expected = "max x < b = " + num(rep.profile.b);
    below_b.observed = one ? "max x = " + num(orbits[0].x_max) : "n/a";
    below_b.passed = one && orbits[0].x_max < rep.profile.b - kIntervalTolerance;
    below_b.boundary = one && std::abs(orbits[0].x_max - rep.profile.b) <= kIntervalTolerance;
    below_b.paper_anchor = "g(y) >= h > h0 at t_max => max y < b = -2 sqrt(a/3)";
    cs.push_back(below_b);

    CheckResult index;
    index.name = "index";
    index.expected = "-1";
    index.observed = one ? std::to_string(orbits[0].index) : "n/a";
    index.passed = one && orbits[0].index == -1;
    index.paper_anchor = "unique solution => ind(x) = deg(F, B_R, 0) = -1";
    cs.push_back(index);

    CheckResult stab;
    stab.name = "stability";
    stab.expected = "Unstable";
    stab.observed = one ? std::string(to_string(orbits[0].stability)) : "n/a";
    stab.passed = one && orbits[0].stability == Stability::Unstable;
    stab.paper_anchor = "h > h0 => the solution is unstable";
    cs.push_back(stab);

    for (auto& c : cs) {
        c.category = "theorem";
        c.enforced = enforced;
        rep.checks.push_back(std::move(c));
    }
}

void append_below(VerificationReport& rep, bool enforced) {
    const auto& orbits = rep.orbits;
    const bool three = orbits.size() == 3;
    const CubicProfile& p = rep.profile;
    std::vector<CheckResult> cs;

    CheckResult count;
    count.name = "count";
    count.expected = "3";
    count.observed = std::to_string(orbits.size());
    count.passed = three;
    count.paper_anchor = "0 < h < h0 => exactly three ordered T-periodic solutions";
    cs.push_back(count);

    CheckResult order;
    order.name = "pointwise_order";
    order.expected = "x1(t) < x2(t) < x3(t) at every sample";
    order.passed = pointwise_order(orbits);
    order.observed = order.passed ? "ordered" : "not ordered";
    order.paper_anchor = "T-periodic solutions are totally ordered";
    cs.push_back(order);

    CheckResult signs;
    signs.name = "signs";
    signs.expected = "(Negative, Positive, Positive)";
    signs.observed = join(orbits, [](const PeriodicOrbit& o) { return std::string(to_string(o.sign)); });
    signs.passed = three && orbits[0].sign == SignClass::Negative &&
                   orbits[1].sign == SignClass::Positive && orbits[2].sign == SignClass::Positive;
    signs.paper_anchor = "minimal solution negative, the other two positive";
    cs.push_back(signs);

    if (three) {
        cs.push_back(inside_open("minimal_localization", orbits[0], p.b, -p.sqrt_a,
                                 "b < x1(t) < -sqrt(a)"));
        cs.push_back(inside_open("maximal_localization", orbits[2], p.sqrt_a3, p.sqrt_a,
                                 "sqrt(a/3) < x3(t) < sqrt(a)"));
    } else {
        for (const char* n : {"minimal_localization", "maximal_localization"}) {
            CheckResult r;
            r.name = n;
            r.expected = n == std::string("minimal_localization") ? "inside " + interval(p.b, -p.sqrt_a)
                                                                  : "inside " + interval(p.sqrt_a3, p.sqrt_a);
            r.observed = "n/a: " + std::to_string(orbits.size()) + " orbits";
            r.passed = false;
            r.paper_anchor = n == std::string("minimal_localization") ? "b < x1(t) < -sqrt(a)"
                                                                      : "sqrt(a/3) < x3(t) < sqrt(a)";
            cs.push_back(r);
        }
    }

    CheckResult idx;
    idx.name = "indices";
    idx.expected = "(-1, 1, -1)";
    idx.observed = join(orbits, [](const PeriodicOrbit& o) { return std::to_string(o.index); });
    idx.passed = three && orbits[0].index == -1 && orbits[1].index == 1 && orbits[2].index == -1;
    idx.paper_anchor = "ind(x1) = -1, ind(x2) = 1, ind(x3) = -1";
    cs.push_back(idx);

    CheckResult stab;
    stab.name = "stabilities";
    stab.expected = "(Unstable, AsymptoticallyStable, Unstable)";
    stab.observed = join(orbits, [](const PeriodicOrbit& o) { return std::string(to_string(o.stability)); });
    stab.passed = three && orbits[0].stability == Stability::Unstable &&
                  orbits[1].stability == Stability::AsymptoticallyStable &&
                  orbits[2].stability == Stability::Unstable;
    stab.paper_anchor = "middle solution asymptotically stable, the other two unstable";
    cs.push_back(stab);

    for (auto& c : cs) {
        c.category = "theorem";
        c.enforced = enforced;
        rep.checks.push_back(std::move(c));
    }
}

CheckResult bracket_check(const VerificationReport& rep) {
    const CubicProfile& p = rep.profile;
    CheckResult r;
    r.name = "constant_bracket";
    r.category = "lemma";
    if (rep.regime == Regime::Above) {
        const double R = 2.0 * std::abs(p.C) + 1.0;
        const auto lower = constant_sub_super(rep.params, rep.forcing_range, -R);
        const auto upper = constant_sub_super(rep.params, rep.forcing_range, p.b);
        r.expected = "-R Subsolution, b Supersolution";
        r.observed = "-R=" + num(-R) + " " + std::string(to_string(lower)) + ", b " +
                     std::string(to_string(upper));
        r.passed = lower == ConstantBound::Subsolution && upper == ConstantBound::Supersolution;
        r.paper_anchor = "g(-R) >= h, g(b) = h0 < h: -R < x1 < b";
    } else {
        const auto lower = constant_sub_super(rep.params, rep.forcing_range, p.b);
        const auto upper = constant_sub_super(rep.params, rep.forcing_range, -p.sqrt_a);
        r.expected = "b Subsolution, -sqrt(a) Supersolution";
        r.observed = "b " + std::string(to_string(lower)) + ", -sqrt(a) " + std::string(to_string(upper));
        r.passed = lower == ConstantBound::Subsolution && upper == ConstantBound::Supersolution;
        r.paper_anchor = "g(b) = h0 > h > 0 = g(-sqrt(a)): b < x1 < -sqrt(a)";
    }
    return r;
}

std::size_t predicted_count(Regime r) { return r == Regime::Above ? 1 : 3; }

}  // namespace

bool VerificationReport::passed() const noexcept {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.passed || !c.enforced; });
}

std::size_t VerificationReport::count(std::string_view category) const noexcept {
    return static_cast<std::size_t>(std::count_if(
        checks.begin(), checks.end(), [&](const CheckResult& c) { return c.category == category; }));
}

CheckResult apriori_bounds_check(const PeriodicOrbit& orbit, const DuffingParams& params,
                                 const CubicProfile& profile) {
    const double sqrt_a = std::sqrt(params.a());
    CheckResult r;
    r.name = "apriori_bounds";
    r.category = "lemma";
    r.expected = "max x in (-inf, " + num(-sqrt_a) + ") U (0, " + num(sqrt_a) + "), min x >= C = " +
                 num(profile.C);
    r.observed = "min x = " + num(orbit.x_min) + ", max x = " + num(orbit.x_max);
    const bool max_ok = orbit.x_max < -sqrt_a || (orbit.x_max > 0.0 && orbit.x_max < sqrt_a);
    r.passed = max_ok && orbit.x_min >= profile.C - 1e-6;
    r.paper_anchor = "max x in (-inf,-sqrt a) U (0,sqrt a), min x >= C with g(C) = |h|_inf";
    return r;
}

CheckResult degree_check(const std::vector<PeriodicOrbit>& orbits) {
    CheckResult r;
    r.name = "degree_sum";
    r.category = "lemma";
    r.expected = "-1";
    r.paper_anchor = "sum of indices = deg(F, B_R, 0) = -1";
    const bool degenerate = std::any_of(orbits.begin(), orbits.end(),
                                        [](const PeriodicOrbit& o) { return o.index == 0; });
    int sum = 0;
    for (const auto& o : orbits) sum += o.index;
    if (degenerate) {
        r.observed = "inconclusive: degenerate orbit (index 0), sum " + std::to_string(sum);
        r.passed = false;
        return r;
    }
    r.observed = std::to_string(sum);
    r.passed = sum == -1;
    return r;
}

std::string_view to_string(ConstantBound b) noexcept {
    switch (b) {
        case ConstantBound::Subsolution: return "Subsolution";
        case ConstantBound::Supersolution: return "Supersolution";
        case ConstantBound::Neither: return "Neither";
    }
    return "Neither";
}

ConstantBound constant_sub_super(const DuffingParams& params, Range forcing_range, double beta) {
    const double g = cubic_g(params.a(), beta);
    if (g >= forcing_range.hi) return ConstantBound::Subsolution;
    if (g <= forcing_range.lo) return ConstantBound::Supersolution;
    return ConstantBound::Neither;
}

ConstantBound constant_sub_super(const DuffingParams& params, const Forcing& forcing, double beta) {
    const Range r = forcing_range(forcing);
    if (!(r.lo > 0.0)) throw DomainError("constant_sub_super requires positive forcing");
    return constant_sub_super(params, r, beta);
}

CheckResult uniqueness_interval_check(const std::vector<PeriodicOrbit>& orbits,
                                      const CubicProfile& profile) {
    std::size_t neg = 0, pos_convex = 0, positive = 0;
    for (const auto& o : orbits) {
        if (o.x_max < -profile.sqrt_a3) ++neg;
        if (o.x_min > profile.sqrt_a3) ++pos_convex;
        if (o.x_min > 0.0) ++positive;
    }
    CheckResult r;
    r.name = "uniqueness_intervals";
    r.category = "lemma";
    r.expected = "<=1 in x<-sqrt(a/3), <=1 in x>sqrt(a/3), <=2 in x>0";
    r.observed = std::to_string(neg) + ", " + std::to_string(pos_convex) + ", " + std::to_string(positive);
    r.passed = neg <= 1 && pos_convex <= 1 && positive <= 2;
    r.paper_anchor = "g' monotone on [u,v] => unique; g concave on (0,inf) => at most two";
    return r;
}

CheckResult stability_index_check(const std::vector<PeriodicOrbit>& orbits) {
    CheckResult r;
    r.name = "stability_index_consistency";
    r.category = "lemma";
    r.expected = "AsymptoticallyStable <=> +1, Unstable <=> -1, no Marginal";
    r.paper_anchor = "g_x <= (pi/T)^2 + c^2/4: stable <=> ind = 1, unstable <=> ind = -1";
    r.passed = true;
    std::string obs;
    for (const auto& o : orbits) {
        const bool ok = (o.stability == Stability::AsymptoticallyStable && o.index == 1) ||
                        (o.stability == Stability::Unstable && o.index == -1);
        r.passed = r.passed && ok;
        if (!obs.empty()) obs += ", ";
        obs += std::string(to_string(o.stability)) + "/" + std::to_string(o.index);
    }
    r.observed = obs.empty() ? "no orbits" : obs;
    return r;
}

VerificationReport verify(const DuffingParams& params, const Forcing& forcing,
                          const SolverConfig& config) {
    if (std::abs(forcing.period() - params.period()) > 1e-12 * params.period())
        throw DomainError("forcing period does not match T");

    const Range range = forcing_range(forcing);
    const double hmax = std::max(std::abs(range.lo), std::abs(range.hi));
    VerificationReport rep(params, forcing);
    rep.forcing_range = range;
    rep.regime = classify_regime(params, range);
    rep.damping_ok = damping_condition(params);
    rep.profile = make_profile(params.a(), hmax);
    if (!(hmax > 0.0)) rep.profile.C = -rep.profile.sqrt_a;

    rep.box = default_search_box(params, forcing, config);
    Enumeration en = enumerate_orbits(params, forcing, rep.box, config);

    const bool theorem_regime = rep.regime == Regime::Above || rep.regime == Regime::Below;
    if (theorem_regime && en.orbits.size() != predicted_count(rep.regime)) {
        SolverConfig denser = config;
        denser.grid_nx *= 2;
        denser.grid_nv *= 2;
        denser.slice_starts *= 2;
        rep.box = default_search_box(params, forcing, denser);
        en = enumerate_orbits(params, forcing, rep.box, denser);
        rep.retried = true;
    }
    rep.orbits = std::move(en.orbits);
    rep.diagnostics = en.diagnostics;
    for (const auto& o : rep.orbits) rep.degree_sum += o.index;

    if (rep.regime == Regime::Invalid) return rep;

    if (theorem_regime) {
        if (rep.regime == Regime::Above)
            append_above(rep, rep.damping_ok);
        else
            append_below(rep, rep.damping_ok);
    }

    // The a-priori bounds need only h > 0; they are data outside the theorem regimes.
    for (const auto& o : rep.orbits) {
        CheckResult c = apriori_bounds_check(o, params, rep.profile);
        c.enforced = theorem_regime;
        rep.checks.push_back(std::move(c));
    }
    if (!theorem_regime) return rep;

    rep.checks.push_back(degree_check(rep.orbits));
    rep.checks.push_back(bracket_check(rep));

    CheckResult uniq = uniqueness_interval_check(rep.orbits, rep.profile);
    uniq.enforced = params.a() < params.lambda2();
    rep.checks.push_back(std::move(uniq));

    CheckResult consistency = stability_index_check(rep.orbits);
    consistency.enforced = rep.damping_ok;
    rep.checks.push_back(std::move(consistency));
    return rep;
}

}  // namespace duffing
