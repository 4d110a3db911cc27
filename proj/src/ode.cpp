#include "iode/ode.hpp"

namespace iode {

namespace {

Rhs counted(const Rhs& f, long* counter) {
    return [f, counter](const GrossNumber& x, const GrossNumber& y) {
        ++*counter;
        return f(x, y);
    };
}

long step_count(const IvpProblem& p, const Scalar& h) {
    if (h.sign() <= 0) throw Error("step h must be positive");
    if (!(p.x_end > p.x0)) throw Error("x_end must exceed x0");
    const BigRat ratio = (p.x_end.value() - p.x0.value()) / h.value();
    if (boost::multiprecision::denominator(ratio) != 1)
        throw Error("step h must divide the interval [x0, x_end] evenly");
    return static_cast<long>(BigInt(boost::multiprecision::numerator(ratio)));
}

void fill_errors(const IvpProblem& p, SolveResult& r) {
    if (!p.exact) return;
    r.errors.reserve(r.points.size());
    for (const auto& [x, y] : r.points)
        r.errors.push_back(Scalar(p.exact(x).value() - y.value())); // exact difference
}

// purely finite evaluation for the classical baselines
Scalar eval_finite(const Rhs& f, const Scalar& x, const Scalar& y) {
    return parts(f(GrossNumber::from_scalar(x), GrossNumber::from_scalar(y))).finite;
}

} // namespace

SolveResult solve_oneshot_taylor(const IvpProblem& p, int k, const ScalarContext& ctx) {
    SolveResult res;
    const Rhs f = counted(p.rhs, &res.f_evals);
    TaylorModel model = build_taylor(f, p.x0, p.y0, k, Direction::Forward, ctx);
    const Scalar y_end = model.eval(ctx.sub(p.x_end, p.x0), ctx);
    res.points.emplace_back(p.x0, p.y0);
    res.points.emplace_back(p.x_end, y_end);
    res.models.push_back(std::move(model));
    fill_errors(p, res);
    return res;
}

SolveResult solve_method_1_0(const IvpProblem& p, const SolverConfig& cfg) {
    const long n_steps = step_count(p, cfg.h);
    SolveResult res;
    const Rhs f = counted(p.rhs, &res.f_evals);
    Scalar x = p.x0, y = p.y0;
    res.points.emplace_back(x, y);
    for (long n = 0; n < n_steps; ++n) {
        TaylorModel model = build_taylor(f, x, y, cfg.order, Direction::Forward, cfg.ctx);
        y = model.eval(cfg.h, cfg.ctx);
        x = cfg.ctx.add(x, cfg.h);
        res.points.emplace_back(x, y);
        res.models.push_back(std::move(model));
    }
    fill_errors(p, res);
    return res;
}

TaylorModel backward_correction(const TaylorModel& model_fwd, const TaylorModel& model_at_end,
                                const Scalar& tau, const Scalar& h, const ScalarContext& ctx) {
    if (model_fwd.order() != 2 || model_at_end.order() != 2)
        throw Error("backward_correction expects order-2 models");
    const Scalar minus_h = h.negated();
    const Scalar b0 = model_at_end.eval(minus_h, ctx);
    const Scalar b1 = model_at_end.deriv1(minus_h, ctx);
    const Scalar& b2 = model_at_end.derivs[2];
    const Scalar one_minus_tau = ctx.sub(Scalar(1), tau);
    TaylorModel r;
    r.center = model_fwd.center;
    r.derivs.resize(3);
    r.derivs[0] = ctx.add(model_fwd.derivs[0], ctx.mul(tau, ctx.sub(model_fwd.derivs[0], b0)));
    r.derivs[1] = ctx.add(ctx.mul(tau, model_fwd.derivs[1]), ctx.mul(one_minus_tau, b1));
    r.derivs[2] = ctx.add(ctx.mul(tau, model_fwd.derivs[2]), ctx.mul(one_minus_tau, b2));
    return r;
}

SolveResult solve_method_1_1(const IvpProblem& p, const SolverConfig& cfg) {
    const long n_steps = step_count(p, cfg.h);
    SolveResult res;
    const Rhs f = counted(p.rhs, &res.f_evals);
    Scalar x = p.x0, y = p.y0;
    res.points.emplace_back(x, y);
    res.corrections.push_back({Scalar(0), y});
    Scalar c(0);
    for (long n = 1; n <= n_steps; ++n) {
        TaylorModel model = build_taylor(f, x, y, cfg.order, Direction::Forward, cfg.ctx);
        const Scalar y_raw = model.eval(cfg.h, cfg.ctx);
        x = cfg.ctx.add(x, cfg.h);

        // re-expand from the step's endpoint; at x_end the backward trace
        // keeps f inside the integration interval
        const Direction dir = (n == n_steps) ? Direction::Backward : Direction::Forward;
        const TaylorModel model_end = build_taylor(f, x, y_raw, cfg.order, dir, cfg.ctx);
        const TaylorModel r = backward_correction(model, model_end, cfg.tau, cfg.h, cfg.ctx);
        const Scalar r_at_h = r.eval(cfg.h, cfg.ctx);

        if (cfg.corrected_feedback) {
            // step onward from the corrected value; c reports the step defect
            y = r_at_h;
            res.corrections.push_back({cfg.ctx.sub(y_raw, r_at_h), y});
        } else {
            y = y_raw;
            c = cfg.ctx.add(c, cfg.ctx.sub(y_raw, r_at_h));
            res.corrections.push_back({c, cfg.ctx.sub(y_raw, c)});
        }
        res.points.emplace_back(x, y);
        res.models.push_back(std::move(model));
    }
    fill_errors(p, res);
    return res;
}

SolveResult solve_heun(const IvpProblem& p, const Scalar& h, const ScalarContext& ctx) {
    const long n_steps = step_count(p, h);
    SolveResult res;
    const Rhs f = counted(p.rhs, &res.f_evals);
    Scalar x = p.x0, y = p.y0;
    res.points.emplace_back(x, y);
    const Scalar half = ctx.div(h, Scalar(2));
    for (long n = 0; n < n_steps; ++n) {
        const Scalar k1 = eval_finite(f, x, y);
        const Scalar x1 = ctx.add(x, h);
        const Scalar k2 = eval_finite(f, x1, ctx.add(y, ctx.mul(h, k1)));
        y = ctx.add(y, ctx.mul(half, ctx.add(k1, k2)));
        x = x1;
        res.points.emplace_back(x, y);
    }
    fill_errors(p, res);
    return res;
}

SolveResult solve_rk4(const IvpProblem& p, const Scalar& h, const ScalarContext& ctx) {
    const long n_steps = step_count(p, h);
    SolveResult res;
    const Rhs f = counted(p.rhs, &res.f_evals);
    Scalar x = p.x0, y = p.y0;
    res.points.emplace_back(x, y);
    const Scalar half_h = ctx.div(h, Scalar(2));
    const Scalar sixth = ctx.div(h, Scalar(6));
    for (long n = 0; n < n_steps; ++n) {
        const Scalar k1 = eval_finite(f, x, y);
        const Scalar xm = ctx.add(x, half_h);
        const Scalar k2 = eval_finite(f, xm, ctx.add(y, ctx.mul(half_h, k1)));
        const Scalar k3 = eval_finite(f, xm, ctx.add(y, ctx.mul(half_h, k2)));
        const Scalar x1 = ctx.add(x, h);
        const Scalar k4 = eval_finite(f, x1, ctx.add(y, ctx.mul(h, k3)));
        Scalar sum = ctx.add(k1, ctx.mul(Scalar(2), k2));
        sum = ctx.add(sum, ctx.mul(Scalar(2), k3));
        sum = ctx.add(sum, k4);
        y = ctx.add(y, ctx.mul(sixth, sum));
        x = x1;
        res.points.emplace_back(x, y);
    }
    fill_errors(p, res);
    return res;
}

} // namespace iode
