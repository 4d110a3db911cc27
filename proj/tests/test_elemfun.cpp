#include <doctest.h>

#include "iode/elemfun.hpp"

using namespace iode;

namespace {

const ScalarContext R = ScalarContext::rational();

GrossNumber G(const char* text) { return parse_gross(text, R); }

// independent oracle: Taylor coefficients of exp/sin/cos/ln(1+.) by a plain
// factorial loop over rationals
BigRat exp_coeff(int j) {
    BigRat f = 1;
    for (int i = 2; i <= j; ++i) f *= i;
    return 1 / f;
}
BigRat sin_coeff(int j) {
    if (j % 2 == 0) return 0;
    return (j % 4 == 1 ? 1 : -1) * exp_coeff(j);
}
BigRat cos_coeff(int j) {
    if (j % 2 == 1) return 0;
    return (j % 4 == 0 ? 1 : -1) * exp_coeff(j);
}
BigRat ln1p_coeff(int j) {
    if (j == 0) return 0;
    return BigRat(j % 2 == 1 ? 1 : -1, j);
}

GrossNumber series_oracle(BigRat (*coeff)(int), int K) {
    std::vector<GrossTerm> terms;
    for (int j = 0; j <= K; ++j) {
        const BigRat c = coeff(j);
        if (c != 0) terms.push_back({Scalar(c), BigRat(-j)});
    }
    return normalize(std::move(terms), R);
}

} // namespace

TEST_CASE("lift at purely finite points") {
    CHECK(lift(ElemFun::Exp, GrossNumber(), 3, R) == G("1"));
    CHECK(lift(ElemFun::Cos, GrossNumber(), 5, R) == G("1"));
    CHECK(lift(ElemFun::Sin, GrossNumber(), 5, R).is_zero());
    CHECK(lift(ElemFun::Ln, G("1"), 5, R).is_zero());
}

TEST_CASE("lift of infinitesimal arguments matches the series oracle") {
    const GrossNumber h = GrossNumber::infinitesimal();
    CHECK(lift(ElemFun::Exp, h, 3, R) == series_oracle(exp_coeff, 3));
    CHECK(lift(ElemFun::Exp, h, 8, R) == series_oracle(exp_coeff, 8));
    CHECK(lift(ElemFun::Sin, h, 2, R) == h); // no #^-2 term in the sine series
    CHECK(lift(ElemFun::Sin, h, 7, R) == series_oracle(sin_coeff, 7));
    CHECK(lift(ElemFun::Cos, h, 4, R) == series_oracle(cos_coeff, 4));
    CHECK(lift(ElemFun::Ln, add(G("1"), h, R), 6, R) == series_oracle(ln1p_coeff, 6));
}

TEST_CASE("finite coefficient equals the scalar value") {
    const ScalarContext d = ScalarContext::decimal(25);
    const GrossNumber x = add(GrossNumber::from_scalar(Scalar(1, 4)),
                              mul(GrossNumber::infinitesimal(), Scalar(3), d), d);
    const GrossNumber g = lift(ElemFun::Exp, x, 4, d);
    CHECK(coefficient_at(g, BigRat(0)) == exp_scalar(Scalar(1, 4), d));
}

TEST_CASE("exp is additive over infinitesimals up to truncation") {
    const int K = 5;
    auto truncated = [&](const GrossNumber& g) {
        std::vector<GrossTerm> kept;
        for (const auto& t : g.terms())
            if (t.power >= BigRat(-K)) kept.push_back(t);
        return normalize(std::move(kept), R);
    };
    const GrossNumber a = G("2*#^-1 - 1/3*#^-2");
    const GrossNumber b = G("1*#^-1 + 5*#^-3");
    const GrossNumber lhs = lift(ElemFun::Exp, add(a, b, R), K, R);
    const GrossNumber rhs = truncated(mul(lift(ElemFun::Exp, a, K, R), lift(ElemFun::Exp, b, K, R), R));
    CHECK(lhs == rhs);
}

TEST_CASE("derivative read-off: exp about a finite center") {
    // coefficient_at(lift(exp, z + #^-1, K), -j) * j! = exp(z) for every j
    const ScalarContext d = ScalarContext::decimal(30);
    const GrossNumber z = add(GrossNumber::from_scalar(Scalar(-18)), GrossNumber::infinitesimal(), d);
    const GrossNumber g = lift(ElemFun::Exp, z, 6, d);
    const Scalar want = exp_scalar(Scalar(-18), d);
    BigRat fact = 1;
    for (int j = 1; j <= 6; ++j) {
        fact *= j;
        const BigRat got = coefficient_at(g, BigRat(-j)).value() * fact;
        const BigRat rel = boost::multiprecision::abs(got - want.value()) / want.value();
        CHECK(rel < BigRat(1, BigInt("10000000000000000000000000"))); // 1e-25
    }
}

TEST_CASE("domain and argument errors") {
    CHECK_THROWS_AS(lift(ElemFun::Exp, GrossNumber::grossone(), 2, R), InfinitePartUnsupported);
    CHECK_THROWS_AS(lift(ElemFun::Ln, GrossNumber(), 2, ScalarContext::decimal(10)), DomainError);
    CHECK_THROWS_AS(lift(ElemFun::Ln, G("-2 + #^-1"), 2, ScalarContext::decimal(10)), DomainError);
    // rational backend rejects irrational values
    CHECK_THROWS_AS(lift(ElemFun::Exp, G("1 + #^-1"), 2, R), DomainError);
}
