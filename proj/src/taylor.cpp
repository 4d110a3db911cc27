#include "iode/taylor.hpp"

namespace iode {

namespace {

BigInt binomial(int n, int k) {
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

BigInt factorial(int n) {
    BigInt r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

} // namespace

Scalar TaylorModel::eval(const Scalar& dx, const ScalarContext& ctx) const {
    Scalar acc = derivs.at(0);
    Scalar power(1);
    for (int j = 1; j <= order(); ++j) {
        power = ctx.mul(power, dx);
        const Scalar coeff = ctx.div(derivs[static_cast<std::size_t>(j)], Scalar(factorial(j), 1));
        acc = ctx.add(acc, ctx.mul(coeff, power));
    }
    return acc;
}

Scalar TaylorModel::deriv1(const Scalar& dx, const ScalarContext& ctx) const {
    if (order() < 1) return Scalar(0);
    Scalar acc = derivs.at(1);
    Scalar power(1);
    for (int j = 2; j <= order(); ++j) {
        power = ctx.mul(power, dx);
        const Scalar coeff = ctx.div(derivs[static_cast<std::size_t>(j)], Scalar(factorial(j - 1), 1));
        acc = ctx.add(acc, ctx.mul(coeff, power));
    }
    return acc;
}

StepTrace euler_infinitesimal(const Rhs& f, const Scalar& x0, const Scalar& y0, int k,
                              Direction direction, const ScalarContext& ctx) {
    if (k < 1) throw Error("euler_infinitesimal: k must be >= 1");
    const GrossNumber h = GrossNumber::infinitesimal();
    StepTrace trace;
    trace.direction = direction;
    GrossNumber x = GrossNumber::from_scalar(x0);
    GrossNumber y = GrossNumber::from_scalar(y0);
    trace.nodes.emplace_back(x, y);
    for (int i = 0; i < k; ++i) {
        GrossNumber fi;
        try {
            fi = f(x, y);
        } catch (const Error& e) {
            throw RhsEvaluationError("evaluation failed at node " + std::to_string(i) + ": " + e.what());
        }
        const GrossNumber increment = mul(h, fi, ctx);
        if (direction == Direction::Forward) {
            y = add(y, increment, ctx);
            x = add(x, h, ctx);
        } else {
            y = sub(y, increment, ctx);
            x = sub(x, h, ctx);
        }
        trace.nodes.emplace_back(x, y);
    }
    return trace;
}

GrossNumber difference(const StepTrace& trace, int k, const ScalarContext& ctx) {
    if (static_cast<int>(trace.nodes.size()) < k + 1)
        throw InsufficientNodes("difference of order " + std::to_string(k) + " needs " +
                                std::to_string(k + 1) + " nodes, trace has " +
                                std::to_string(trace.nodes.size()));
    GrossNumber acc;
    for (int i = 0; i <= k; ++i) {
        BigInt w = binomial(k, i);
        if (i % 2 == 1) w = -w;
        // forward: sum (-1)^i C(k,i) y_{k-i};  backward: sum (-1)^i C(k,i) y_{-i}
        const std::size_t idx = trace.direction == Direction::Forward
                                    ? static_cast<std::size_t>(k - i)
                                    : static_cast<std::size_t>(i);
        acc = add(acc, mul(trace.nodes[idx].second, Scalar(w, 1), ctx), ctx);
    }
    return acc;
}

Scalar extract_derivative(const GrossNumber& delta_k, int k, const ScalarContext& ctx) {
    if (ctx.is_rational()) {
        for (const auto& t : delta_k.terms()) {
            if (t.power > BigRat(-k)) {
                throw ContaminatedDifference(
                    "difference of order " + std::to_string(k) +
                    " has a nonzero grossdigit at power " +
                    BigInt(boost::multiprecision::numerator(t.power)).str() +
                    (boost::multiprecision::denominator(t.power) == 1
                         ? ""
                         : "/" + BigInt(boost::multiprecision::denominator(t.power)).str()) +
                    "; the evaluation was not exact (use recover_with_errors) or a solution "
                    "derivative is not purely finite");
            }
        }
    }
    return coefficient_at(delta_k, BigRat(-k));
}

TaylorModel build_taylor(const Rhs& f, const Scalar& x0, const Scalar& y0, int k,
                         Direction direction, const ScalarContext& ctx) {
    if (k < 1) throw Error("build_taylor: k must be >= 1");
    const StepTrace trace = euler_infinitesimal(f, x0, y0, k, direction, ctx);
    TaylorModel model;
    model.center = x0;
    model.derivs.resize(static_cast<std::size_t>(k) + 1);
    model.derivs[0] = y0;
    // y'(x0) read directly from f(x0,y0): the -1 digit of the first difference
    model.derivs[1] = coefficient_at(difference(trace, 1, ctx), BigRat(-1));
    for (int j = 2; j <= k; ++j)
        model.derivs[static_cast<std::size_t>(j)] =
            extract_derivative(difference(trace, j, ctx), j, ctx);
    return model;
}

namespace {

BigRat max_coefficient_magnitude(const GrossNumber& g) {
    BigRat m = 0;
    for (const auto& t : g.terms()) {
        BigRat a = boost::multiprecision::abs(t.digit.value());
        if (a > m) m = a;
    }
    return m;
}

} // namespace

std::pair<TaylorModel, ErrorLedger> recover_with_errors(const Rhs& f, const Scalar& x0,
                                                        const Scalar& y0, int k,
                                                        const ScalarContext& ctx) {
    if (k < 2) throw Error("recover_with_errors: k must be >= 2");
    // one extra step so Delta^{k+1} exists and the order-k error is readable
    const StepTrace trace = euler_infinitesimal(f, x0, y0, k + 1, Direction::Forward, ctx);

    std::vector<GrossNumber> deltas(static_cast<std::size_t>(k) + 2);
    for (int j = 1; j <= k + 1; ++j) deltas[static_cast<std::size_t>(j)] = difference(trace, j, ctx);

    // zero classification for the leading-zero-error prefix: a recovered error
    // is structurally absent when it vanishes relative to the extracted digit
    const BigRat zero_rel = ctx.is_rational() ? BigRat(0) : BigRat(1, pow(BigInt(10), static_cast<unsigned>(ctx.digits - 1)));
    auto effectively_zero = [&](const Scalar& eps, const GrossNumber& delta, int order) {
        if (eps.is_zero()) return true;
        if (ctx.is_rational()) return false;
        const BigRat lead = boost::multiprecision::abs(
            coefficient_at(delta, BigRat(-(order + 1))).value());
        return boost::multiprecision::abs(eps.value()) < zero_rel * lead;
    };

    ErrorLedger ledger;
    ledger.eps.resize(static_cast<std::size_t>(k));
    for (int j = 1; j <= k; ++j) {
        Scalar eps = coefficient_at(deltas[static_cast<std::size_t>(j) + 1], BigRat(-j));
        if (effectively_zero(eps, deltas[static_cast<std::size_t>(j) + 1], j)) eps = Scalar(0);
        ledger.eps[static_cast<std::size_t>(j) - 1] = eps;
    }

    // the same error reappears with alternating sign in every later
    // difference; check the next one before trusting the ledger
    for (int j = 1; j + 2 <= k + 1; ++j) {
        const GrossNumber& next = deltas[static_cast<std::size_t>(j) + 2];
        const Scalar reread = coefficient_at(next, BigRat(-j));
        const BigRat deviation =
            boost::multiprecision::abs(reread.value() + ledger.eps[static_cast<std::size_t>(j) - 1].value());
        BigRat tol = 0;
        if (!ctx.is_rational())
            tol = max_coefficient_magnitude(next) /
                  pow(BigInt(10), static_cast<unsigned>(ctx.digits > 10 ? ctx.digits - 8 : 2));
        if (deviation > tol)
            throw InconsistentLedger("recovered error for order " + std::to_string(j) +
                                     " disagrees between consecutive differences");
    }

    TaylorModel model;
    model.center = x0;
    model.derivs.resize(static_cast<std::size_t>(k) + 1);
    model.derivs[0] = y0;
    for (int j = 1; j <= k; ++j) {
        const Scalar contaminated = coefficient_at(deltas[static_cast<std::size_t>(j)], BigRat(-j));
        model.derivs[static_cast<std::size_t>(j)] =
            ctx.add(contaminated, ledger.eps[static_cast<std::size_t>(j) - 1]);
    }
    return {model, ledger};
}

GrossNumber readoff_eval(const TaylorModel& model, const Scalar& h, const ScalarContext& ctx) {
    const GrossNumber z = add(GrossNumber::from_scalar(h), GrossNumber::infinitesimal(), ctx);
    GrossNumber acc = GrossNumber::from_scalar(model.derivs.at(0));
    GrossNumber zpow = GrossNumber::from_scalar(Scalar(1));
    for (int j = 1; j <= model.order(); ++j) {
        zpow = mul(zpow, z, ctx);
        const Scalar coeff = ctx.div(model.derivs[static_cast<std::size_t>(j)], Scalar(factorial(j), 1));
        acc = add(acc, mul(zpow, coeff, ctx), ctx);
    }
    return acc;
}

std::vector<Scalar> readoff_at_finite(const TaylorModel& model, const Scalar& h, int K,
                                      const ScalarContext& ctx) {
    if (K > model.order())
        throw Error("readoff_at_finite: requested " + std::to_string(K) +
                    " orders from a model of order " + std::to_string(model.order()));
    const GrossNumber g = readoff_eval(model, h, ctx);
    std::vector<Scalar> values(static_cast<std::size_t>(K) + 1);
    for (int j = 0; j <= K; ++j)
        values[static_cast<std::size_t>(j)] =
            ctx.mul(coefficient_at(g, BigRat(-j)), Scalar(factorial(j), 1));
    return values;
}

GrossNumber refine_readoff(const GrossNumber& previous, const Scalar& new_deriv, int order_j,
                           const Scalar& h, const ScalarContext& ctx) {
    if (order_j < 0) throw Error("refine_readoff: negative order");
    if (new_deriv.is_zero()) return previous;
    const GrossNumber z = add(GrossNumber::from_scalar(h), GrossNumber::infinitesimal(), ctx);
    const GrossNumber zpow = pow_int(z, order_j, ctx);
    const Scalar coeff = ctx.div(new_deriv, Scalar(factorial(order_j), 1));
    return add(previous, mul(zpow, coeff, ctx), ctx);
}

} // namespace iode
