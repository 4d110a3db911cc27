#include <doctest.h>

#include <map>

#include "iode/problems.hpp"
#include "iode/taylor.hpp"

using namespace iode;

namespace {

const ScalarContext R = ScalarContext::rational();

GrossNumber G(const char* text) { return parse_gross(text, R); }
Scalar S(const char* text) { return parse_scalar(text); }

Rhs rhs_ex3(const ScalarContext& ctx) {
    return make_rhs(builtin_problem("ex3").rhs, EvalContext::make(ctx, 16));
}

Rhs rhs_zero() {
    return [](const GrossNumber&, const GrossNumber&) { return GrossNumber(); };
}

// symbolic-differentiation oracle for the Gaussian-bump problem: with
// u(x) = 1 + g(x), g = exp(-2(x-3)^2), the derivatives are g^(n) = p_n g with
// p_1 = -4(x-3) and p_{n+1} = p_n' + p_n p_1. The local solution through
// (0, y0) scales them by (y0 - 1) instead of g(0).
std::vector<BigRat> gaussian_derivative_factors(int k) {
    using Poly = std::map<long, BigRat>; // exponent of t = x-3 -> coefficient
    const Poly p1{{1, BigRat(-4)}};
    auto d = [](const Poly& p) {
        Poly out;
        for (auto& [e, c] : p)
            if (e >= 1) out[e - 1] = c * e;
        return out;
    };
    auto mul = [](const Poly& a, const Poly& b) {
        Poly out;
        for (auto& [e1, c1] : a)
            for (auto& [e2, c2] : b) out[e1 + e2] += c1 * c2;
        return out;
    };
    auto add = [](Poly a, const Poly& b) {
        for (auto& [e, c] : b) a[e] += c;
        return a;
    };
    auto eval_at = [](const Poly& p, const BigRat& t) {
        BigRat v = 0;
        for (auto& [e, c] : p) {
            BigRat tp = 1;
            for (long j = 0; j < e; ++j) tp *= t;
            v += c * tp;
        }
        return v;
    };
    std::vector<BigRat> q(static_cast<std::size_t>(k) + 1);
    Poly p = p1;
    for (int n = 1; n <= k; ++n) {
        q[static_cast<std::size_t>(n)] = eval_at(p, BigRat(-3));
        p = add(d(p), mul(p, p1));
    }
    return q;
}

} // namespace

TEST_CASE("euler trace on y' = x - y") {
    const StepTrace t = euler_infinitesimal(rhs_ex3(R), Scalar(0), Scalar(1), 4, Direction::Forward, R);
    REQUIRE(t.nodes.size() == 5);
    CHECK(t.nodes[1].second == G("1 - #^-1"));
    CHECK(t.nodes[2].second == G("1 - 2*#^-1 + 2*#^-2"));
    CHECK(t.nodes[4].second == G("1 - 4*#^-1 + 12*#^-2 - 8*#^-3 + 2*#^-4"));
    CHECK(t.nodes[3].first == G("3*#^-1"));
}

TEST_CASE("constant problems have flat traces and zero differences") {
    const StepTrace t = euler_infinitesimal(rhs_zero(), Scalar(2), Scalar(5), 3, Direction::Forward, R);
    for (const auto& [x, y] : t.nodes) CHECK(y == G("5"));
    for (int k = 1; k <= 3; ++k) CHECK(difference(t, k, R).is_zero());
}

TEST_CASE("differences reproduce the worked values") {
    const StepTrace t = euler_infinitesimal(rhs_ex3(R), Scalar(0), Scalar(1), 4, Direction::Forward, R);
    CHECK(difference(t, 2, R) == G("2*#^-2"));
    CHECK(difference(t, 3, R) == G("-2*#^-3"));
    CHECK(difference(t, 4, R) == G("2*#^-4"));
    CHECK_THROWS_AS(difference(t, 5, R), InsufficientNodes);
}

TEST_CASE("extract_derivative") {
    CHECK(extract_derivative(G("2*#^-2"), 2, R) == Scalar(2));
    CHECK(extract_derivative(G("-2*#^-3"), 3, R) == Scalar(-2));
    CHECK(extract_derivative(G("2*#^-4"), 4, R) == Scalar(2));
    // contamination above power -k: hard error under the rational backend,
    // tolerated (recoverable) under the decimal backend
    CHECK_THROWS_AS(extract_derivative(G("#^-1 + 2*#^-2"), 2, R), ContaminatedDifference);
    CHECK(extract_derivative(G("#^-1 + 2*#^-2"), 2, ScalarContext::decimal(10)) == Scalar(2));
}

TEST_CASE("build_taylor extracts the first five derivatives exactly") {
    const TaylorModel m = build_taylor(rhs_ex3(R), Scalar(0), Scalar(1), 4, Direction::Forward, R);
    const std::vector<Scalar> want = {Scalar(1), Scalar(-1), Scalar(2), Scalar(-2), Scalar(2)};
    CHECK(m.derivs == want);
    CHECK(m.eval(Scalar(1), R) == Scalar(3, 4)); // induced polynomial at 1
}

TEST_CASE("model polynomial values") {
    TaylorModel m;
    m.center = Scalar(0);
    m.derivs = {Scalar(1), Scalar(-1), Scalar(2), Scalar(-2), Scalar(2)};
    // T(1/2) = 1 - 1/2 + 1/4 - 1/24 + 1/192
    CHECK(m.eval(S("1/2"), R) == S("137/192"));
    CHECK(m.deriv1(S("1/2"), R) == S("-5/24")); // -1 + 1 - 1/4 + 1/24
    CHECK(m.eval(Scalar(0), R) == Scalar(1));
}

TEST_CASE("forward and backward extraction agree") {
    const TaylorModel fwd = build_taylor(rhs_ex3(R), Scalar(0), Scalar(1), 4, Direction::Forward, R);
    const TaylorModel bwd = build_taylor(rhs_ex3(R), Scalar(0), Scalar(1), 4, Direction::Backward, R);
    CHECK(fwd.derivs == bwd.derivs);
    // and at an interior point with a different initial value
    const TaylorModel f2 = build_taylor(rhs_ex3(R), S("1/2"), S("3/4"), 3, Direction::Forward, R);
    const TaylorModel b2 = build_taylor(rhs_ex3(R), S("1/2"), S("3/4"), 3, Direction::Backward, R);
    CHECK(f2.derivs == b2.derivs);
}

TEST_CASE("gaussian-bump derivatives, exact rational run vs symbolic oracle") {
    const Problem& ex5 = builtin_problem("ex5");
    const Scalar y0 = ex5.initial_value(R); // the 30-digit initial value as an exact rational
    const Rhs f = make_rhs(ex5.rhs, EvalContext::make(R, 16));
    const int k = 12;
    const TaylorModel m = build_taylor(f, Scalar(0), y0, k, Direction::Forward, R);
    const std::vector<BigRat> q = gaussian_derivative_factors(k);
    const BigRat b = y0.value() - 1;
    for (int j = 1; j <= k; ++j)
        CHECK(m.derivs[static_cast<std::size_t>(j)].value() == q[static_cast<std::size_t>(j)] * b);
}

TEST_CASE("recovery is a no-op under exact evaluation") {
    const auto [model, ledger] = recover_with_errors(rhs_ex3(R), Scalar(0), Scalar(1), 4, R);
    const TaylorModel plain = build_taylor(rhs_ex3(R), Scalar(0), Scalar(1), 4, Direction::Forward, R);
    CHECK(model.derivs == plain.derivs);
    for (const Scalar& e : ledger.eps) CHECK(e.is_zero());
    CHECK_THROWS_AS(recover_with_errors(rhs_ex3(R), Scalar(0), Scalar(1), 1, R), Error);
}

TEST_CASE("recovery on the published derivative run") {
    const ScalarContext d30 = ScalarContext::decimal(30);
    const Problem& ex5 = builtin_problem("ex5");
    const Scalar y0 = ex5.initial_value(d30);
    const Rhs f = make_shifted_rhs(ex5.rhs, EvalContext::make(d30, 16));
    const auto [model, ledger] = recover_with_errors(f, Scalar(0), y0, 12, d30);

    CHECK(ledger.eps[0].is_zero()); // first evaluation is exact
    // eps_2 and the corrected second derivative (reference values)
    auto close = [](const Scalar& got, const char* want, int sig) {
        const BigRat w = parse_scalar(want).value();
        return boost::multiprecision::abs(got.value() - w) <=
               boost::multiprecision::abs(w) / boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(sig));
    };
    CHECK(close(ledger.eps[1], "0.609199190e-7", 8));
    CHECK(close(model.derivs[2], "0.213219716e-5", 8));
    CHECK(close(ledger.eps[11], "0.479935826e4", 8));

    // recovered derivatives equal the exact rational run of the same problem
    const Scalar y0r = ex5.initial_value(R);
    CHECK(y0r == y0);
    const TaylorModel exact = build_taylor(make_rhs(ex5.rhs, EvalContext::make(R, 16)), Scalar(0),
                                           y0r, 12, Direction::Forward, R);
    for (int j = 1; j <= 8; ++j) {
        const BigRat rel =
            boost::multiprecision::abs(model.derivs[static_cast<std::size_t>(j)].value() -
                                       exact.derivs[static_cast<std::size_t>(j)].value()) /
            boost::multiprecision::abs(exact.derivs[static_cast<std::size_t>(j)].value());
        CHECK(rel < BigRat(1, boost::multiprecision::pow(BigInt(10), 27)));
    }
}

TEST_CASE("read-off at a finite point") {
    TaylorModel s2;
    s2.center = Scalar(0);
    s2.derivs = {Scalar(1), Scalar(-1), Scalar(2)};
    const GrossNumber v = readoff_eval(s2, S("0.2"), R);
    CHECK(v == G("0.84 - 0.6*#^-1 + #^-2"));
    const std::vector<Scalar> vals = readoff_at_finite(s2, S("0.2"), 2, R);
    CHECK(vals[0] == S("0.84"));
    CHECK(vals[1] == S("-0.6"));
    CHECK(vals[2] == Scalar(2)); // 2! * grossdigit 1
    CHECK_THROWS_AS(readoff_at_finite(s2, S("0.2"), 3, R), Error);

    TaylorModel flat;
    flat.center = Scalar(0);
    flat.derivs = {Scalar(5), Scalar(0), Scalar(0)};
    const std::vector<Scalar> cv = readoff_at_finite(flat, Scalar(3), 2, R);
    CHECK(cv == std::vector<Scalar>{Scalar(5), Scalar(0), Scalar(0)});
}

TEST_CASE("incremental read-off refinement") {
    TaylorModel s2;
    s2.center = Scalar(0);
    s2.derivs = {Scalar(1), Scalar(-1), Scalar(2)};

    SUBCASE("exact rationals") {
        const GrossNumber v2 = readoff_eval(s2, S("0.2"), R);
        const GrossNumber v3 = refine_readoff(v2, Scalar(-2), 3, S("0.2"), R);
        CHECK(v3 == G("314/375 - 16/25*#^-1 + 4/5*#^-2 - 1/3*#^-3"));
        CHECK(coefficient_at(v3, BigRat(0)) == Scalar(62800, 75000));
        // adding a zero derivative changes nothing
        CHECK(refine_readoff(v3, Scalar(0), 4, S("0.2"), R) == v3);
        const GrossNumber v4 = refine_readoff(v3, Scalar(2), 4, S("0.2"), R);
        auto near = [&](const BigRat& p, const char* want) {
            const BigRat w = parse_scalar(want).value();
            return boost::multiprecision::abs(coefficient_at(v4, p).value() - w) <= BigRat(1, 1000000);
        };
        CHECK(near(BigRat(0), "0.837466"));
        CHECK(near(BigRat(-1), "-0.637333"));
        CHECK(near(BigRat(-2), "0.82"));
        CHECK(near(BigRat(-3), "-0.266667"));
        CHECK(coefficient_at(v4, BigRat(-4)) == S("1/12"));
    }

    SUBCASE("six-digit decimals") {
        const ScalarContext d6 = ScalarContext::decimal(6);
        const GrossNumber v2 = readoff_eval(s2, S("0.2"), d6);
        const GrossNumber v3 = refine_readoff(v2, Scalar(-2), 3, S("0.2"), d6);
        CHECK(coefficient_at(v3, BigRat(0)) == S("0.837333"));
        CHECK(coefficient_at(v3, BigRat(-1)) == S("-0.64"));
        CHECK(coefficient_at(v3, BigRat(-2)) == S("0.8"));
        CHECK(coefficient_at(v3, BigRat(-3)) == S("-0.333333"));
    }
}
