#pragma once

// The linear periodic operator L_alpha x = x'' + c x' + alpha(t) x:
// monodromy, nondegeneracy, periodic solutions of L_alpha x = h, operator
// index, and the sign / disconjugacy certificates behind the maximum
// principle.

#include <optional>
#include <stdexcept>
#include <string_view>

#include "duffing/model.hpp"
#include "duffing/ode.hpp"

namespace duffing {

class DegenerateOperator : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct LinearPeriodicSolution {
    Trajectory trajectory;
    State initial;
    /// max |z(T) - z(0)| / (1 + |z(0)|_inf)
    double residual = 0.0;
};

/// 1e-8 (1 + |M|_F): below this |det(I - M)| counts as a periodic kernel.
[[nodiscard]] double degeneracy_threshold(const Monodromy& m) noexcept;
[[nodiscard]] bool is_degenerate(const Monodromy& m) noexcept;

[[nodiscard]] Monodromy monodromy_linear(const HillCoefficient& alpha, double c, double period,
                                         Tolerances tol = {});

[[nodiscard]] bool is_nondegenerate(const HillCoefficient& alpha, double c, double period,
                                    Tolerances tol = {});

/// Periodic solution of x'' + c x' + alpha x = h via (I - M) z0 = p(T).
/// Throws DegenerateOperator when the homogeneous problem has a periodic kernel.
[[nodiscard]] LinearPeriodicSolution solve_linear_periodic(const HillCoefficient& alpha, double c,
                                                           const Forcing& h, double period,
                                                           Tolerances tol = {},
                                                           std::size_t intervals = 0);

/// sign det(I - M). Throws DegenerateOperator.
[[nodiscard]] int operator_index(const HillCoefficient& alpha, double c, double period,
                                 Tolerances tol = {});

enum class SignClass { Positive, Negative, ChangesSign };
[[nodiscard]] std::string_view to_string(SignClass s) noexcept;

/// Positive iff min x > tol, Negative iff max x < -tol, tol = 1e-9 (1 + |x|_inf).
[[nodiscard]] SignClass sign_classify(const Trajectory& traj);

/// Solution of y'' - c y' + alpha y = 0 with y(0) = 0, y'(0) = 1 over [0, T].
[[nodiscard]] Trajectory disconjugacy_witness(const HillCoefficient& alpha, double c, double period,
                                              Tolerances tol = {},
                                              std::size_t intervals = kDefaultSamplesPerPeriod);

/// True iff the witness is > tol at every sample with t > t0.
[[nodiscard]] bool witness_positive(const Trajectory& witness, double tol = 1e-10);

enum class MaxPrincipleOutcome { Positive, Negative, ChangesSign, Degenerate };
[[nodiscard]] std::string_view to_string(MaxPrincipleOutcome o) noexcept;

struct MaximumPrincipleResult {
    MaxPrincipleOutcome outcome = MaxPrincipleOutcome::Degenerate;
    Range alpha_range;
    /// Bound the hypothesis was tested against: (pi/T)^2 + c^2/4.
    double bound = 0.0;
    /// alpha_range.hi <= bound. When false the sign conclusion is not
    /// asserted and `assertion_passed` stays true.
    bool hypothesis_ok = false;
    /// The constant-sign conclusion plus, when alpha is one-signed, the
    /// predicted sign.
    bool asserted = false;
    bool assertion_passed = true;
    std::optional<LinearPeriodicSolution> solution;
};

/// Requires forcing_range(h).lo > 0 (DomainError otherwise).
[[nodiscard]] MaximumPrincipleResult maximum_principle_check(const HillCoefficient& alpha, double c,
                                                             const Forcing& h, double period,
                                                             Tolerances tol = {});

}  // namespace duffing
