#ifndef IODE_ODE_HPP
#define IODE_ODE_HPP

#include <optional>

#include "iode/taylor.hpp"

namespace iode {

/// Initial value problem y' = f(x,y), y(x0) = y0 on [x0, x_end].
/// `exact`, when set, supplies a high-precision y(x) for error columns.
struct IvpProblem {
    Rhs rhs;
    Scalar x0;
    Scalar y0;
    Scalar x_end;
    std::function<Scalar(const Scalar&)> exact;
};

struct SolverConfig {
    Scalar h;                     // finite step, > 0; must divide [x0, x_end]
    int order = 2;                // derivatives extracted per step
    Scalar tau = Scalar(1, 2);    // mixing weight of the backward correction
    ScalarContext ctx;
    bool corrected_feedback = false; // step from r_n(h) instead of y(h, x_{n-1})
};

struct SolveResult {
    std::vector<std::pair<Scalar, Scalar>> points; // (x_n, y_n), points[0] = (x0,y0)
    std::vector<TaylorModel> models;               // per-step forward models
    struct Correction {
        Scalar c;   // accumulated global correction
        Scalar y_c; // corrected value y_n - c_n
    };
    std::vector<Correction> corrections; // method 1.1 only, aligned with points
    long f_evals = 0;                    // every f evaluation, infinitesimal steps included
    std::vector<Scalar> errors;          // y(x_n) - y_n when exact is available
};

/// One Taylor model of order k at x0 (k infinitesimal steps), then a single
/// finite evaluation at x_end. f_evals == k.
SolveResult solve_oneshot_taylor(const IvpProblem& p, int k, const ScalarContext& ctx);

/// Per finite step: order-2 model at (x_n, y_n), advance by evaluating it at
/// h. Two f evaluations per step.
SolveResult solve_method_1_0(const IvpProblem& p, const SolverConfig& cfg);

/// Blend of the forward model at x_{n-1} with the model re-expanded from
/// (x_n, y_n) back toward x_{n-1}: tau-weighted coefficients per
/// backward_correction. The defect r_n(h) vs y_n accumulates into a running
/// global correction c_n reported alongside y_n. Four f evaluations per step;
/// the final point's model uses backward differences so f is never evaluated
/// past x_end.
SolveResult solve_method_1_1(const IvpProblem& p, const SolverConfig& cfg);

/// Classical 2-stage Heun and 4-stage Runge-Kutta baselines over purely
/// finite scalars.
SolveResult solve_heun(const IvpProblem& p, const Scalar& h, const ScalarContext& ctx);
SolveResult solve_rk4(const IvpProblem& p, const Scalar& h, const ScalarContext& ctx);

/// r_n from the order-2 forward model at x_{n-1} and the model at x_n
/// evaluated back toward x_{n-1} (variable flip x -> x - h):
///   r(x) = f0 + tau (f0 - b0) + [tau f' + (1-tau) b'] x + 1/2 [tau f'' + (1-tau) b''] x^2
/// returned as a TaylorModel centered at model_fwd.center.
TaylorModel backward_correction(const TaylorModel& model_fwd, const TaylorModel& model_at_end,
                                const Scalar& tau, const Scalar& h, const ScalarContext& ctx);

} // namespace iode

#endif
