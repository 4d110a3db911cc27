#ifndef IODE_TAYLOR_HPP
#define IODE_TAYLOR_HPP

#include <functional>
#include <utility>
#include <vector>

#include "iode/grossnum.hpp"

namespace iode {

/// Black-box right-hand side f(x,y) over grossnumbers.
using Rhs = std::function<GrossNumber(const GrossNumber&, const GrossNumber&)>;

enum class Direction { Forward, Backward };

/// Nodes (x_i, y_i) of the Euler iteration with the infinitesimal step #^-1,
/// x_i = x0 ± i*#^-1.
struct StepTrace {
    std::vector<std::pair<GrossNumber, GrossNumber>> nodes;
    Direction direction = Direction::Forward;
};

/// Extracted derivatives y(x0), y'(x0), ..., y^(k)(x0) and the truncated
/// polynomial they induce: T(x) = sum_j derivs[j]/j! (x - center)^j.
struct TaylorModel {
    Scalar center;
    std::vector<Scalar> derivs; // length order+1

    int order() const { return static_cast<int>(derivs.size()) - 1; }

    /// T(center + dx)
    Scalar eval(const Scalar& dx, const ScalarContext& ctx) const;
    /// T'(center + dx)
    Scalar deriv1(const Scalar& dx, const ScalarContext& ctx) const;
};

/// Per-order evaluation errors recovered from contaminated differences;
/// eps[j-1] holds the error of the j-th derivative's evaluation, exactly zero
/// where the evaluation was exact.
struct ErrorLedger {
    std::vector<Scalar> eps;
};

/// Run k Euler steps with h = #^-1 from (x0, y0). Forward nodes sit at
/// x0 + i#^-1, backward at x0 - i#^-1 (stepping with -h).
/// Wraps evaluation failures in RhsEvaluationError carrying the node index.
StepTrace euler_infinitesimal(const Rhs& f, const Scalar& x0, const Scalar& y0, int k,
                              Direction direction, const ScalarContext& ctx);

/// Signed binomial combination of trace values: forward difference of order k
/// (or the backward difference for a backward trace).
GrossNumber difference(const StepTrace& trace, int k, const ScalarContext& ctx);

/// Grossdigit c_{-k} of the k-th difference, which equals y^(k)(x0) when the
/// evaluations were exact. Under the rational backend a nonzero coefficient
/// anywhere above power -k violates that premise and throws
/// ContaminatedDifference (use recover_with_errors); the decimal backend
/// tolerates contamination, which is the error-recovery signal.
Scalar extract_derivative(const GrossNumber& delta_k, int k, const ScalarContext& ctx);

/// Full pipeline: trace, differences, extraction. derivs[1] is read directly
/// from f(x0,y0) (the first difference), higher orders from their differences.
/// k evaluations of f.
TaylorModel build_taylor(const Rhs& f, const Scalar& x0, const Scalar& y0, int k,
                         Direction direction, const ScalarContext& ctx);

/// Derivative extraction with automatic evaluation-error recovery: for each
/// order j the grossdigit of the (j+1)-th difference at power -j delivers the
/// error eps_j committed by the j-th evaluation (the sign alternation across
/// higher differences is checked for consistency), and the corrected
/// derivative is c_tilde_{-j} + eps_j. Runs k+1 Euler steps so every order up
/// to k is corrected. Requires k >= 2. Throws InconsistentLedger when the
/// recovered errors disagree across consecutive differences beyond the
/// backend's precision.
std::pair<TaylorModel, ErrorLedger> recover_with_errors(const Rhs& f, const Scalar& x0,
                                                        const Scalar& y0, int k,
                                                        const ScalarContext& ctx);

/// Model polynomial evaluated at the grossnumber point h + #^-1.
GrossNumber readoff_eval(const TaylorModel& model, const Scalar& h, const ScalarContext& ctx);

/// values[j] = j! * grossdigit_{-j} of the evaluation at h + #^-1, i.e.
/// s(h), s'(h), s''(h), ..., s^(K)(h). Requires model order >= K.
std::vector<Scalar> readoff_at_finite(const TaylorModel& model, const Scalar& h, int K,
                                      const ScalarContext& ctx);

/// previous + (new_deriv/j!)*(h + #^-1)^j: refine an existing read-off with
/// one more derivative without re-evaluating the lower orders.
GrossNumber refine_readoff(const GrossNumber& previous, const Scalar& new_deriv, int order_j,
                           const Scalar& h, const ScalarContext& ctx);

} // namespace iode

#endif
