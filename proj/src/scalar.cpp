#include "iode/scalar.hpp"

#include <cassert>
#include <cctype>
#include <sstream>

namespace iode {

namespace {

BigInt pow10(long e) {
    assert(e >= 0);
    BigInt r = 1;
    BigInt base = 10;
    long n = e;
    while (n > 0) {
        if (n & 1) r *= base;
        base *= base;
        n >>= 1;
    }
    return r;
}

long digit_count(const BigInt& n) {
    // digits of |n|; 0 has one digit
    if (n == 0) return 1;
    return static_cast<long>(BigInt(boost::multiprecision::abs(n)).str().size());
}

// half-even integer rounding of n/d, d > 0
BigInt div_round_half_even(const BigInt& n, const BigInt& d) {
    BigInt q = n / d; // truncates toward zero
    BigInt r = n - q * d;
    if (r == 0) return q;
    BigInt twice = 2 * boost::multiprecision::abs(r);
    int s = n < 0 ? -1 : 1;
    if (twice > d || (twice == d && ((q % 2) != 0))) q += s;
    return q;
}

} // namespace

long floor_log10(const BigRat& v) {
    assert(v != 0);
    const BigInt n = boost::multiprecision::abs(BigInt(boost::multiprecision::numerator(v)));
    const BigInt d = BigInt(boost::multiprecision::denominator(v));
    long e = digit_count(n) - digit_count(d);
    // candidate may be off by one; |v| >= 10^e  <=>  n*10^-e >= d
    auto at_least = [&](long k) {
        if (k >= 0) return n >= d * pow10(k);
        return n * pow10(-k) >= d;
    };
    if (!at_least(e)) --e;
    if (at_least(e + 1)) ++e;
    return e;
}

BigRat round_significant(const BigRat& v, int digits) {
    assert(digits >= 1);
    if (v == 0) return v;
    const long e = floor_log10(v);
    const long shift = digits - 1 - e;
    BigInt n = BigInt(boost::multiprecision::numerator(v));
    BigInt d = BigInt(boost::multiprecision::denominator(v));
    if (shift >= 0)
        n *= pow10(shift);
    else
        d *= pow10(-shift);
    BigInt m = div_round_half_even(n, d);
    long ecur = e;
    if (boost::multiprecision::abs(m) >= pow10(digits)) { // 999..9 carried to 100..0
        m /= 10;
        ++ecur;
    }
    BigRat out(m);
    const long back = ecur - digits + 1;
    if (back >= 0)
        out *= BigRat(pow10(back));
    else
        out /= BigRat(pow10(-back));
    return out;
}

Scalar ScalarContext::round(const BigRat& v) const {
    if (backend == Backend::Rational || v == 0) return Scalar(v);
    return Scalar(round_significant(v, digits));
}

Scalar ScalarContext::div(const Scalar& a, const Scalar& b) const {
    if (b.is_zero()) throw DivisionByZero("scalar division by zero");
    return round(a.value() / b.value());
}

// ---------------------------------------------------------------- parsing

Scalar parse_scalar(std::string_view text) {
    std::size_t i = 0;
    const std::size_t n = text.size();
    auto fail = [&](const char* msg) -> Scalar { throw SyntaxError(msg, i); };

    bool neg = false;
    if (i < n && (text[i] == '+' || text[i] == '-')) neg = text[i++] == '-';
    if (i >= n || !std::isdigit(static_cast<unsigned char>(text[i]))) return fail("expected digit");

    BigInt ipart = 0;
    while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ipart = ipart * 10 + (text[i++] - '0');

    BigRat value(ipart);
    if (i < n && text[i] == '.') {
        ++i;
        BigInt fpart = 0;
        long fdigits = 0;
        while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
            fpart = fpart * 10 + (text[i++] - '0');
            ++fdigits;
        }
        if (fdigits == 0) return fail("expected digit after '.'");
        value += BigRat(fpart, pow10(fdigits));
    }
    if (i < n && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < n && (text[i] == '+' || text[i] == '-')) eneg = text[i++] == '-';
        if (i >= n || !std::isdigit(static_cast<unsigned char>(text[i]))) return fail("expected exponent digit");
        long ev = 0;
        while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ev = ev * 10 + (text[i++] - '0');
        if (eneg)
            value /= BigRat(pow10(ev));
        else
            value *= BigRat(pow10(ev));
    } else if (i < n && text[i] == '/') {
        ++i;
        if (i >= n || !std::isdigit(static_cast<unsigned char>(text[i]))) return fail("expected denominator");
        BigInt den = 0;
        while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) den = den * 10 + (text[i++] - '0');
        if (den == 0) return fail("zero denominator");
        value /= BigRat(den);
    }
    if (i != n) return fail("trailing characters in number");
    if (neg) value = -value;
    return Scalar(value);
}

// ------------------------------------------------------------- rendering

std::string to_ratio_string(const Scalar& s) {
    const BigInt n(boost::multiprecision::numerator(s.value()));
    const BigInt d(boost::multiprecision::denominator(s.value()));
    if (d == 1) return n.str();
    return n.str() + "/" + d.str();
}

std::string to_fixed_string(const Scalar& s, int decimals) {
    assert(decimals >= 0);
    BigInt n = BigInt(boost::multiprecision::numerator(s.value())) * pow10(decimals);
    const BigInt d(boost::multiprecision::denominator(s.value()));
    BigInt q = div_round_half_even(n, d);
    const bool neg = q < 0;
    std::string digits = BigInt(boost::multiprecision::abs(q)).str();
    if (static_cast<long>(digits.size()) <= decimals)
        digits.insert(0, decimals + 1 - digits.size(), '0');
    std::string out = neg ? "-" : "";
    out += digits.substr(0, digits.size() - decimals);
    if (decimals > 0) {
        out += '.';
        out += digits.substr(digits.size() - decimals);
    }
    return out;
}

std::string to_sci_string(const Scalar& s, int sig) {
    assert(sig >= 1);
    if (s.is_zero()) return "0";
    const BigRat r = round_significant(s.value(), sig);
    const long e = floor_log10(r);
    // mantissa integer with exactly `sig` digits
    BigInt n = BigInt(boost::multiprecision::numerator(r));
    BigInt d = BigInt(boost::multiprecision::denominator(r));
    const long shift = sig - 1 - e;
    if (shift >= 0)
        n *= pow10(shift);
    else
        d *= pow10(-shift);
    BigInt m = n / d;
    assert(n % d == 0);
    const bool neg = m < 0;
    std::string digits = BigInt(boost::multiprecision::abs(m)).str();
    // strip trailing zeros but keep at least one digit
    std::size_t last = digits.find_last_not_of('0');
    digits.erase(last + 1);
    std::string out = neg ? "-" : "";
    out += digits.substr(0, 1);
    if (digits.size() > 1) out += "." + digits.substr(1);
    out += 'e';
    out += (e < 0 ? '-' : '+');
    std::string es = std::to_string(e < 0 ? -e : e);
    if (es.size() < 2) es.insert(0, "0");
    out += es;
    return out;
}

std::string format_scalar(const Scalar& s, const ScalarContext& ctx) {
    if (ctx.is_rational()) return to_ratio_string(s);
    if (s.is_zero()) return "0";
    // decimal backend: values have 2^a 5^b denominators; render the exact digits
    BigInt d(boost::multiprecision::denominator(s.value()));
    long a = 0, b = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++a;
    }
    while (d % 5 == 0) {
        d /= 5;
        ++b;
    }
    if (d != 1) return to_ratio_string(s); // not a finite decimal; exact fallback
    const long c = a > b ? a : b;
    BigInt mantissa = boost::multiprecision::abs(BigInt(boost::multiprecision::numerator(s.value())));
    mantissa *= boost::multiprecision::pow(BigInt(2), static_cast<unsigned>(c - a));
    mantissa *= boost::multiprecision::pow(BigInt(5), static_cast<unsigned>(c - b));
    while (mantissa % 10 == 0) mantissa /= 10;
    return to_sci_string(s, static_cast<int>(digit_count(mantissa)));
}

// ------------------------------------------- elementary scalar functions

namespace {

constexpr int kGuardDigits = 15;
constexpr int kMaxSeriesTerms = 100000;

// exp on x >= 0 by the power series, exact rationals, relative tail < 10^-prec
BigRat exp_series_nonneg(const BigRat& x, int prec) {
    assert(x >= 0);
    BigRat sum = 1, term = 1;
    const BigRat tol_scale = BigRat(1, pow10(prec));
    for (int k = 1; k < kMaxSeriesTerms; ++k) {
        term = term * x / k;
        sum += term;
        // once the term ratio x/(k+1) < 1/2 the tail is below the last term
        if (BigRat(k + 1) > 2 * x && term < sum * tol_scale) return sum;
    }
    throw Error("exp series did not converge");
}

// 2*atanh(t) for 0 <= t < 1, relative tail < 10^-prec
BigRat atanh2_series(const BigRat& t, int prec) {
    assert(t >= 0 && t < 1);
    if (t == 0) return 0;
    const BigRat t2 = t * t;
    BigRat term = 2 * t, sum = term;
    const BigRat tol_scale = BigRat(1, pow10(prec));
    for (int j = 1; j < kMaxSeriesTerms; ++j) {
        term = term * t2;
        sum += term / (2 * j + 1);
        if (term < sum * tol_scale) return sum;
    }
    throw Error("log series did not converge");
}

BigRat ln10(int prec) { return atanh2_series(BigRat(9, 11), prec); }

// Machin: pi = 16 atan(1/5) - 4 atan(1/239), absolute tail < 10^-prec
BigRat pi_rational(int prec) {
    auto atan_inv = [&](long q) {
        BigRat term(1, q), sum = term;
        const BigRat q2(BigInt(q) * q);
        const BigRat tol(1, pow10(prec + 2));
        for (int j = 1; j < kMaxSeriesTerms; ++j) {
            term = term / q2;
            const BigRat piece = term / (2 * j + 1);
            sum += (j % 2 == 1) ? -piece : piece;
            if (piece < tol) return sum;
        }
        throw Error("pi series did not converge");
    };
    return 16 * atan_inv(5) - 4 * atan_inv(239);
}

// sin/cos share the alternating series; absolute tail < 10^-prec, |x| small
BigRat sincos_series(const BigRat& x, bool want_sin, int prec) {
    BigRat term = want_sin ? x : BigRat(1);
    BigRat sum = term;
    const BigRat x2 = x * x;
    const BigRat tol(1, pow10(prec));
    int k = want_sin ? 1 : 0;
    for (int j = 0; j < kMaxSeriesTerms; ++j) {
        term = -term * x2 / ((k + 1) * (k + 2));
        k += 2;
        sum += term;
        if (boost::multiprecision::abs(term) < tol && BigRat(k) > boost::multiprecision::abs(x))
            return sum;
    }
    throw Error("sin/cos series did not converge");
}

[[noreturn]] void rational_mode_domain(const char* fn) {
    throw DomainError(std::string(fn) +
                      ": irrational value; the rational backend only admits arguments "
                      "with a rational result (use the decimal backend)");
}

} // namespace

Scalar exp_scalar(const Scalar& x, const ScalarContext& ctx) {
    if (ctx.is_rational()) {
        if (x.is_zero()) return Scalar(1);
        rational_mode_domain("exp");
    }
    const int prec = ctx.digits + kGuardDigits;
    const BigRat ax = boost::multiprecision::abs(x.value());
    BigRat r = exp_series_nonneg(ax, prec);
    if (x.sign() < 0) r = 1 / r;
    return ctx.round(r);
}

Scalar ln_scalar(const Scalar& x, const ScalarContext& ctx) {
    if (x.sign() <= 0) throw DomainError("ln: argument must be positive");
    if (ctx.is_rational()) {
        if (x.value() == 1) return Scalar(0);
        rational_mode_domain("ln");
    }
    const int prec = ctx.digits + kGuardDigits;
    const long e = floor_log10(x.value());
    BigRat m = x.value();
    if (e >= 0)
        m /= BigRat(pow10(e));
    else
        m *= BigRat(pow10(-e));
    // m in [1,10): ln x = 2 atanh((m-1)/(m+1)) + e ln 10
    BigRat r = atanh2_series((m - 1) / (m + 1), prec);
    if (e != 0) r += e * ln10(prec);
    return ctx.round(r);
}

namespace {

// reduce x by the nearest multiple of 2*pi when it is large
BigRat trig_reduce(const BigRat& x, int prec) {
    if (boost::multiprecision::abs(x) <= 4) return x;
    const long extra = floor_log10(x) + 2;
    const BigRat two_pi = 2 * pi_rational(prec + static_cast<int>(extra));
    const BigRat ratio = x / two_pi;
    const BigInt n = div_round_half_even(BigInt(boost::multiprecision::numerator(ratio)),
                                         BigInt(boost::multiprecision::denominator(ratio)));
    return x - BigRat(n) * two_pi;
}

} // namespace

Scalar sin_scalar(const Scalar& x, const ScalarContext& ctx) {
    if (ctx.is_rational()) {
        if (x.is_zero()) return Scalar(0);
        rational_mode_domain("sin");
    }
    const int prec = ctx.digits + kGuardDigits;
    return ctx.round(sincos_series(trig_reduce(x.value(), prec), true, prec));
}

Scalar cos_scalar(const Scalar& x, const ScalarContext& ctx) {
    if (ctx.is_rational()) {
        if (x.is_zero()) return Scalar(1);
        rational_mode_domain("cos");
    }
    const int prec = ctx.digits + kGuardDigits;
    return ctx.round(sincos_series(trig_reduce(x.value(), prec), false, prec));
}

} // namespace iode
