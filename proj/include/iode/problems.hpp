#ifndef IODE_PROBLEMS_HPP
#define IODE_PROBLEMS_HPP

#include <optional>
#include <string>
#include <vector>

#include "iode/parser.hpp"
#include "iode/taylor.hpp"

namespace iode {

/// A registered test problem: right-hand side, exact solution, default
/// interval, and how the initial value is obtained.
struct Problem {
    std::string id;
    std::string description;
    RhsFunction rhs;   // f(x,y)
    RhsFunction exact; // y(x); may be invalid() when unknown
    Scalar x0;
    Scalar x_end;
    // y0: either a literal, or the exact solution evaluated at x0 under a
    // decimal context (the rational backend adopts that finite decimal as an
    // exact rational initial value)
    std::optional<Scalar> y0_literal;
    int y0_digits = 30;
    // The published derivative-recovery run for this problem evaluated f at
    // nodes shifted one infinitesimal step ahead (steps past the first);
    // reproduction harnesses replay that schedule.
    bool shifted_recovery_schedule = false;

    Scalar initial_value(const ScalarContext& ctx) const;
    /// Exact solution at x under a decimal context with `digits` digits.
    Scalar exact_at(const Scalar& x, int digits) const;
};

const Problem& builtin_problem(const std::string& id); // throws UnknownIdentifier
std::vector<std::string> builtin_problem_ids();

/// f wrapped for the solver layer, evaluating under the given context.
Rhs make_rhs(const RhsFunction& f, const EvalContext& ctx);

/// The published recovery schedule: f evaluated one infinitesimal step ahead
/// whenever x already carries an infinitesimal part (the first evaluation,
/// at purely finite x, is untouched).
Rhs make_shifted_rhs(const RhsFunction& f, const EvalContext& ctx);

} // namespace iode

#endif
