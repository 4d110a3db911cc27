#include <doctest.h>

#include <random>

#include "iode/ode.hpp"
#include "iode/problems.hpp"

using namespace iode;

namespace {

const ScalarContext R = ScalarContext::rational();

Scalar S(const char* text) { return parse_scalar(text); }

IvpProblem ivp_ex3(const ScalarContext& ctx) {
    const Problem& p = builtin_problem("ex3");
    IvpProblem out;
    out.rhs = make_rhs(p.rhs, EvalContext::make(ctx, 12));
    out.x0 = p.x0;
    out.y0 = p.initial_value(ctx);
    out.x_end = p.x_end;
    out.exact = [&p](const Scalar& x) { return p.exact_at(x, 40); };
    return out;
}

IvpProblem ivp_zero() {
    IvpProblem out;
    out.rhs = [](const GrossNumber&, const GrossNumber&) { return GrossNumber(); };
    out.x0 = Scalar(0);
    out.y0 = Scalar(3);
    out.x_end = Scalar(1);
    return out;
}

} // namespace

TEST_CASE("one-shot Taylor solves") {
    const IvpProblem p = ivp_ex3(R);
    const SolveResult r2 = solve_oneshot_taylor(p, 2, R);
    CHECK(r2.points.back().second == Scalar(1));
    CHECK(r2.f_evals == 2);
    const SolveResult r4 = solve_oneshot_taylor(p, 4, R);
    CHECK(r4.points.back().second == S("3/4"));
    CHECK(r4.f_evals == 4);
    const SolveResult r8 = solve_oneshot_taylor(p, 8, R);
    CHECK(to_fixed_string(r8.points.back().second, 10) == "0.7357638889");
    CHECK(to_fixed_string(r8.errors.back(), 9) == "-0.000005007");
    CHECK(r8.f_evals == 8);

    const SolveResult z = solve_oneshot_taylor(ivp_zero(), 5, R);
    CHECK(z.points.back().second == Scalar(3));
}

TEST_CASE("one-shot error shrinks with the order") {
    const IvpProblem p = ivp_ex3(R);
    BigRat prev = 0;
    for (int k = 3; k <= 8; ++k) {
        const SolveResult r = solve_oneshot_taylor(p, k, R);
        const BigRat err = boost::multiprecision::abs(r.errors.back().value());
        if (k > 3) CHECK(err < prev);
        prev = err;
    }
}

TEST_CASE("method 1.0 walks the reference sequence") {
    const IvpProblem p = ivp_ex3(R);
    SolverConfig cfg;
    cfg.h = S("1/5");
    cfg.ctx = R;
    const SolveResult r = solve_method_1_0(p, cfg);
    REQUIRE(r.points.size() == 6);
    const char* want[] = {"1.000000", "0.840000", "0.744800", "0.702736", "0.704244", "0.741480"};
    for (int n = 0; n <= 5; ++n)
        CHECK(to_fixed_string(r.points[static_cast<std::size_t>(n)].second, 6) == want[n]);
    CHECK(r.f_evals == 10);
    // the per-step models carry the local first and second derivatives
    CHECK(r.models[1].derivs == std::vector<Scalar>{S("0.84"), S("-0.64"), S("1.64")});
    CHECK(r.models[2].derivs == std::vector<Scalar>{S("0.7448"), S("-0.3448"), S("1.3448")});

    const SolveResult z = solve_method_1_0(ivp_zero(), cfg);
    for (const auto& [x, y] : z.points) CHECK(y == Scalar(3));
}

TEST_CASE("heun coincides with method 1.0 on a linear problem") {
    const IvpProblem p = ivp_ex3(R);
    SolverConfig cfg;
    cfg.h = S("1/5");
    cfg.ctx = R;
    const SolveResult a = solve_method_1_0(p, cfg);
    const SolveResult b = solve_heun(p, S("1/5"), R);
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i)
        CHECK(a.points[i].second == b.points[i].second);
    CHECK(b.f_evals == 10);
}

TEST_CASE("rk4 reference values") {
    const IvpProblem p = ivp_ex3(R);
    const SolveResult r = solve_rk4(p, S("1/5"), R);
    CHECK(to_fixed_string(r.points.back().second, 6) == "0.735770");
    CHECK(to_fixed_string(r.errors.back(), 7) == "-0.0000116");
    CHECK(r.f_evals == 20);
}

TEST_CASE("backward correction blends the two models") {
    // identical information on both sides reproduces the forward polynomial
    TaylorModel fwd;
    fwd.center = Scalar(0);
    fwd.derivs = {Scalar(1), Scalar(-1), Scalar(2)};
    const Scalar h = S("1/2");
    TaylorModel end; // the forward model shifted to the step's endpoint
    end.center = h;
    end.derivs = {fwd.eval(h, R), fwd.deriv1(h, R), fwd.derivs[2]};
    const TaylorModel r = backward_correction(fwd, end, S("1/2"), h, R);
    CHECK(r.derivs == fwd.derivs);

    CHECK_THROWS_AS(backward_correction(fwd, TaylorModel{Scalar(0), {Scalar(1)}}, S("1/2"), h, R),
                    Error);
}

TEST_CASE("method 1.1 accumulates the global correction") {
    const ScalarContext d6 = ScalarContext::decimal(6);
    const IvpProblem p = ivp_ex3(d6);
    SolverConfig cfg;
    cfg.h = S("1/5");
    cfg.ctx = d6;
    const SolveResult r = solve_method_1_1(p, cfg);
    REQUIRE(r.corrections.size() == 6);
    CHECK(to_fixed_string(r.corrections[1].y_c, 6) == "0.839200");
    CHECK(to_fixed_string(r.corrections[1].c, 6) == "0.000800");
    CHECK(to_fixed_string(r.corrections[5].y_c, 6) == "0.738682");
    CHECK(to_fixed_string(r.corrections[5].c, 6) == "0.002798");
    CHECK(r.f_evals == 20); // four evaluations per finite step

    const SolveResult z = solve_method_1_1(ivp_zero(), cfg);
    for (const auto& c : z.corrections) {
        CHECK(c.c.is_zero());
        CHECK(c.y_c == Scalar(3));
    }
}

TEST_CASE("method 1.1 never evaluates f beyond x_end") {
    BigRat max_x = -1000;
    IvpProblem p = ivp_ex3(R);
    const Rhs inner = p.rhs;
    p.rhs = [inner, &max_x](const GrossNumber& x, const GrossNumber& y) {
        const BigRat fx = parts(x).finite.value();
        if (fx > max_x) max_x = fx;
        return inner(x, y);
    };
    SolverConfig cfg;
    cfg.h = S("1/5");
    cfg.ctx = R;
    solve_method_1_1(p, cfg);
    CHECK(max_x <= BigRat(1));
}

TEST_CASE("feedback variant steps from the corrected value") {
    const IvpProblem p = ivp_ex3(R);
    SolverConfig cfg;
    cfg.h = S("1/5");
    cfg.ctx = R;
    cfg.corrected_feedback = true;
    const SolveResult r = solve_method_1_1(p, cfg);
    SolverConfig plain = cfg;
    plain.corrected_feedback = false;
    const SolveResult q = solve_method_1_1(p, plain);
    CHECK(r.points.back().second != q.points.back().second);
    CHECK(boost::multiprecision::abs(r.errors.back().value()) < BigRat(1, 100));
}

TEST_CASE("per-step models are exact for linear right-hand sides") {
    // f = a x + b y + c: y'(x0) = a x0 + b y0 + c, y'' = a + b y'
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> pick(-4, 4);
    for (int iter = 0; iter < 25; ++iter) {
        const Scalar a(pick(rng)), b(pick(rng)), c(pick(rng));
        IvpProblem p;
        p.rhs = [&](const GrossNumber& x, const GrossNumber& y) {
            return add(add(mul(x, a, R), mul(y, b, R), R), GrossNumber::from_scalar(c), R);
        };
        p.x0 = Scalar(0);
        p.y0 = Scalar(pick(rng));
        p.x_end = Scalar(1);
        SolverConfig cfg;
        cfg.h = S("1/4");
        cfg.ctx = R;
        const SolveResult r = solve_method_1_0(p, cfg);
        for (std::size_t n = 0; n < r.models.size(); ++n) {
            const Scalar x0 = r.points[n].first;
            const Scalar y0 = r.points[n].second;
            const BigRat d1 = a.value() * x0.value() + b.value() * y0.value() + c.value();
            const BigRat d2 = a.value() + b.value() * d1;
            CHECK(r.models[n].derivs[1].value() == d1);
            CHECK(r.models[n].derivs[2].value() == d2);
        }
    }
}

TEST_CASE("step validation") {
    IvpProblem p = ivp_ex3(R);
    SolverConfig cfg;
    cfg.ctx = R;
    cfg.h = S("3/10"); // does not divide [0,1]
    CHECK_THROWS_AS(solve_method_1_0(p, cfg), Error);
    cfg.h = Scalar(0);
    CHECK_THROWS_AS(solve_method_1_0(p, cfg), Error);
    cfg.h = Scalar(-1, 5);
    CHECK_THROWS_AS(solve_heun(p, cfg.h, R), Error);
}
