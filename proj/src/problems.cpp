#include "iode/problems.hpp"

#include <array>

namespace iode {

Scalar Problem::initial_value(const ScalarContext& ctx) const {
    if (y0_literal) return *y0_literal;
    const int digits = ctx.is_rational() ? y0_digits : ctx.digits;
    return exact_at(x0, digits);
}

Scalar Problem::exact_at(const Scalar& x, int digits) const {
    if (!exact.valid()) throw Error("problem '" + id + "' has no exact solution");
    const EvalContext ectx = EvalContext::make(ScalarContext::decimal(digits), 2);
    const GrossNumber v = exact.evaluate(GrossNumber::from_scalar(x), ectx);
    return parts(v).finite;
}

namespace {

std::array<Problem, 2> make_registry() {
    Problem ex3;
    ex3.id = "ex3";
    ex3.description = "y' = x - y, y(0) = 1, exact y = x - 1 + 2 exp(-x)";
    ex3.rhs = parse_rhs("x - y", 2);
    ex3.exact = parse_rhs("x - 1 + 2*exp(-x)", 1);
    ex3.x0 = Scalar(0);
    ex3.x_end = Scalar(1);
    ex3.y0_literal = Scalar(1);

    Problem ex5;
    ex5.id = "ex5";
    ex5.description = "y' = -(x-c)/s^2 (y-1) with c=3, s=0.5; exact Gaussian bump";
    ex5.rhs = parse_rhs("-(x-3)/(0.5^2)*(y-1)", 2);
    ex5.exact = parse_rhs("1 + exp(-((x-3)/0.5)^2/2)", 1);
    ex5.x0 = Scalar(0);
    ex5.x_end = Scalar(3);
    ex5.y0_digits = 30;
    ex5.shifted_recovery_schedule = true;

    return {std::move(ex3), std::move(ex5)};
}

const std::array<Problem, 2>& registry() {
    static const std::array<Problem, 2> r = make_registry();
    return r;
}

} // namespace

const Problem& builtin_problem(const std::string& id) {
    for (const auto& p : registry())
        if (p.id == id) return p;
    throw UnknownIdentifier("unknown problem '" + id + "' (available: ex3, ex5)");
}

std::vector<std::string> builtin_problem_ids() {
    std::vector<std::string> ids;
    for (const auto& p : registry()) ids.push_back(p.id);
    return ids;
}

Rhs make_rhs(const RhsFunction& f, const EvalContext& ctx) {
    return [f, ctx](const GrossNumber& x, const GrossNumber& y) { return f.evaluate(x, y, ctx); };
}

Rhs make_shifted_rhs(const RhsFunction& f, const EvalContext& ctx) {
    return [f, ctx](const GrossNumber& x, const GrossNumber& y) {
        if (parts(x).infinitesimal.is_zero()) return f.evaluate(x, y, ctx);
        const GrossNumber shifted = add(x, GrossNumber::infinitesimal(), ctx.scalar);
        return f.evaluate(shifted, y, ctx);
    };
}

} // namespace iode
