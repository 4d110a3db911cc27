#include "iode/elemfun.hpp"

namespace iode {

namespace {

// Taylor coefficients f^(j)(F)/j!, j = 0..k, under the backend's rounding.
std::vector<Scalar> taylor_coeffs(ElemFun f, const Scalar& finite, int k, const ScalarContext& ctx) {
    std::vector<Scalar> c(static_cast<std::size_t>(k) + 1);
    switch (f) {
    case ElemFun::Exp: {
        const Scalar e = exp_scalar(finite, ctx);
        c[0] = e;
        for (int j = 1; j <= k; ++j) c[j] = ctx.div(c[j - 1], Scalar(j));
        break;
    }
    case ElemFun::Ln: {
        c[0] = ln_scalar(finite, ctx);
        // ln^(j)(F)/j! = (-1)^(j-1) / (j F^j)
        Scalar fpow(1);
        for (int j = 1; j <= k; ++j) {
            fpow = ctx.mul(fpow, finite);
            Scalar term = ctx.div(Scalar(1), ctx.mul(Scalar(j), fpow));
            c[j] = (j % 2 == 0) ? term.negated() : term;
        }
        break;
    }
    case ElemFun::Sin:
    case ElemFun::Cos: {
        const Scalar s = sin_scalar(finite, ctx);
        const Scalar co = cos_scalar(finite, ctx);
        Scalar fact(1);
        for (int j = 0; j <= k; ++j) {
            if (j > 0) fact = ctx.mul(fact, Scalar(j));
            const int phase = (f == ElemFun::Sin) ? j % 4 : (j + 1) % 4;
            // derivative cycle sin, cos, -sin, -cos
            Scalar base = (phase % 2 == 0) ? s : co;
            if (phase == 2 || phase == 3) base = base.negated();
            c[j] = ctx.div(base, fact);
        }
        break;
    }
    }
    return c;
}

} // namespace

GrossNumber lift(ElemFun f, const GrossNumber& x, int order_k, const ScalarContext& ctx) {
    if (order_k < 0) throw Error("lift: negative order");
    const Parts p = parts(x);
    if (!p.infinite.is_zero())
        throw InfinitePartUnsupported("lift: argument has an infinite part");

    const std::vector<Scalar> c = taylor_coeffs(f, p.finite, order_k, ctx);

    // Horner over the infinitesimal part, truncating below power -K after
    // each multiply so deep tails never accumulate.
    const BigRat floor_power = BigRat(-order_k);
    auto truncate = [&](const GrossNumber& g) {
        std::vector<GrossTerm> kept;
        for (const auto& t : g.terms())
            if (t.power >= floor_power) kept.push_back(t);
        return normalize(std::move(kept), ctx);
    };

    GrossNumber acc = GrossNumber::from_scalar(c[static_cast<std::size_t>(order_k)]);
    for (int j = order_k - 1; j >= 0; --j) {
        acc = truncate(mul(acc, p.infinitesimal, ctx));
        acc = add(acc, GrossNumber::from_scalar(c[static_cast<std::size_t>(j)]), ctx);
    }
    return acc;
}

} // namespace iode
