#include <doctest.h>

#include <random>

#include "iode/grossnum.hpp"

using namespace iode;

// Randomized algebraic laws for the numeral kernel. The full-scale runs
// (10^4 cases) live in the acceptance suite; these are the same generators at
// a size suited to the edit-compile loop.

namespace {

const ScalarContext R = ScalarContext::rational();

struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}

    Scalar digit() {
        std::uniform_int_distribution<int> num(-50, 50);
        std::uniform_int_distribution<int> den(1, 9);
        int n = num(rng);
        if (n == 0) n = 1;
        return Scalar(n, den(rng));
    }
    BigRat power() {
        // a small pool so that powers collide and terms actually merge
        std::uniform_int_distribution<int> num(-6, 6);
        std::uniform_int_distribution<int> den(1, 2);
        return BigRat(num(rng), den(rng));
    }
    GrossNumber number(int max_terms = 6) {
        std::uniform_int_distribution<int> count(0, max_terms);
        std::vector<GrossTerm> terms;
        const int n = count(rng);
        for (int i = 0; i < n; ++i) terms.push_back({digit(), power()});
        return normalize(std::move(terms), R);
    }
    GrossNumber nonzero(int max_terms = 6) {
        while (true) {
            GrossNumber g = number(max_terms);
            if (!g.is_zero()) return g;
        }
    }
};

} // namespace

TEST_CASE("ring axioms") {
    Gen gen(1);
    for (int i = 0; i < 1000; ++i) {
        const GrossNumber a = gen.number(), b = gen.number(), c = gen.number();
        CHECK(add(a, b, R) == add(b, a, R));
        CHECK(add(add(a, b, R), c, R) == add(a, add(b, c, R), R));
        CHECK(mul(a, b, R) == mul(b, a, R));
        CHECK(mul(mul(a, b, R), c, R) == mul(a, mul(b, c, R), R));
        CHECK(mul(a, add(b, c, R), R) == add(mul(a, b, R), mul(a, c, R), R));
        CHECK(add(a, negate(a), R).is_zero());
    }
}

TEST_CASE("normalize is idempotent") {
    Gen gen(2);
    for (int i = 0; i < 1000; ++i) {
        const GrossNumber a = gen.number(8);
        CHECK(normalize(a.terms(), R) == a);
    }
}

TEST_CASE("total order is consistent with addition") {
    Gen gen(3);
    for (int i = 0; i < 1000; ++i) {
        const GrossNumber a = gen.number(), b = gen.number(), c = gen.number();
        const Ordering ab = compare(a, b, R);
        // antisymmetry
        const Ordering ba = compare(b, a, R);
        if (ab == Ordering::Less) CHECK(ba == Ordering::Greater);
        if (ab == Ordering::Equal) CHECK(ba == Ordering::Equal);
        // translation invariance
        CHECK(compare(add(a, c, R), add(b, c, R), R) == ab);
        // transitivity against a third draw
        const GrossNumber d = gen.number();
        if (ab == Ordering::Less && compare(b, d, R) == Ordering::Less)
            CHECK(compare(a, d, R) == Ordering::Less);
    }
}

TEST_CASE("parts form a partition") {
    Gen gen(4);
    for (int i = 0; i < 1000; ++i) {
        const GrossNumber a = gen.number(8);
        const Parts p = parts(a);
        const GrossNumber back =
            add(add(p.infinite, GrossNumber::from_scalar(p.finite), R), p.infinitesimal, R);
        CHECK(back == a);
        for (const auto& t : p.infinite.terms()) CHECK(t.power > 0);
        for (const auto& t : p.infinitesimal.terms()) CHECK(t.power < 0);
    }
}

TEST_CASE("division by a single term inverts multiplication") {
    Gen gen(5);
    for (int i = 0; i < 1000; ++i) {
        const GrossNumber a = gen.number();
        const GrossNumber b = normalize({{gen.digit(), gen.power()}}, R);
        const DivResult q = div(mul(a, b, R), b, BigRat(-1000), R);
        CHECK_FALSE(q.truncated);
        CHECK(q.quotient == a);
    }
}

TEST_CASE("render/parse round trip on random numbers") {
    Gen gen(6);
    for (int i = 0; i < 500; ++i) {
        const GrossNumber a = gen.number(8);
        CHECK(parse_gross(render(a, R), R) == a);
    }
}
