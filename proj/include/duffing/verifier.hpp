#pragma once

// Theorem harness: regime classification, orbit enumeration and a named
// pass/fail ledger of every multiplicity, sign, localization, index and
// stability clause that applies to the given forcing.

#include <string>
#include <string_view>
#include <vector>

#include "duffing/model.hpp"
#include "duffing/orbit_finder.hpp"

namespace duffing {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string expected;
    std::string observed;
    std::string paper_anchor;
    /// "theorem" for the multiplicity clauses, "lemma" for supporting facts.
    std::string category = "theorem";
    /// Failing non-enforced checks are reported but do not fail the run;
    /// used when a hypothesis (damping, positivity) does not hold.
    bool enforced = true;
    /// Observed value within the endpoint tolerance of an open interval.
    bool boundary = false;
};

struct VerificationReport {
    VerificationReport(DuffingParams p, Forcing f) : params(p), forcing(std::move(f)) {}

    DuffingParams params;
    Forcing forcing;
    Range forcing_range;
    Regime regime = Regime::Invalid;
    bool damping_ok = false;
    CubicProfile profile;
    std::vector<PeriodicOrbit> orbits;
    std::vector<CheckResult> checks;
    int degree_sum = 0;
    EnumerationDiagnostics diagnostics;
    SearchBox box;
    /// Enumeration was repeated on a doubled grid after a count mismatch.
    bool retried = false;

    /// All enforced checks pass.
    [[nodiscard]] bool passed() const noexcept;
    [[nodiscard]] std::size_t count(std::string_view category) const noexcept;
};

/// Endpoint tolerance for the open-interval localization checks.
inline constexpr double kIntervalTolerance = 1e-6;

[[nodiscard]] VerificationReport verify(const DuffingParams& params, const Forcing& forcing,
                                        const SolverConfig& config = {});

/// max x in (-inf, -sqrt a) U (0, sqrt a) and min x >= C - 1e-6.
[[nodiscard]] CheckResult apriori_bounds_check(const PeriodicOrbit& orbit, const DuffingParams& params,
                                               const CubicProfile& profile);

/// Sum of indices equals -1; inconclusive (failed) when any index is 0.
[[nodiscard]] CheckResult degree_check(const std::vector<PeriodicOrbit>& orbits);

enum class ConstantBound { Subsolution, Supersolution, Neither };
[[nodiscard]] std::string_view to_string(ConstantBound b) noexcept;

/// Constant beta is a subsolution of x'' + c x' + g(x) = h when g(beta) >= max h
/// and a supersolution when g(beta) <= min h.
[[nodiscard]] ConstantBound constant_sub_super(const DuffingParams& params, const Forcing& forcing,
                                               double beta);
[[nodiscard]] ConstantBound constant_sub_super(const DuffingParams& params, Range forcing_range,
                                               double beta);

/// At most one orbit inside x < -sqrt(a/3), at most one inside x > sqrt(a/3),
/// at most two inside x > 0.
[[nodiscard]] CheckResult uniqueness_interval_check(const std::vector<PeriodicOrbit>& orbits,
                                                    const CubicProfile& profile);

/// Stable iff index +1 and unstable iff index -1; Marginal counts as failure.
[[nodiscard]] CheckResult stability_index_check(const std::vector<PeriodicOrbit>& orbits);

}  // namespace duffing
