#ifndef IODE_SCALAR_HPP
#define IODE_SCALAR_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "iode/errors.hpp"

namespace iode {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// A purely finite coefficient value. Immutable; all arithmetic goes through
/// a ScalarContext so that the decimal backend can round after every operation.
class Scalar {
public:
    Scalar() = default;
    Scalar(int v) : v_(v) {}
    Scalar(long v) : v_(v) {}
    Scalar(long long v) : v_(v) {}
    explicit Scalar(BigRat v) : v_(std::move(v)) {}
    Scalar(BigInt num, BigInt den) : v_(BigRat(std::move(num), std::move(den))) {}

    const BigRat& value() const { return v_; }
    bool is_zero() const { return v_ == 0; }
    int sign() const { return v_ == 0 ? 0 : (v_ > 0 ? 1 : -1); }

    // Exact (never rounds): negation and absolute value cannot create digits.
    Scalar negated() const { return Scalar(BigRat(-v_)); }
    Scalar abs() const { return v_ < 0 ? negated() : *this; }

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return a.v_ != b.v_; }
    friend bool operator<(const Scalar& a, const Scalar& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Scalar& a, const Scalar& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Scalar& a, const Scalar& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Scalar& a, const Scalar& b) { return a.v_ >= b.v_; }

private:
    BigRat v_ = 0;
};

enum class Backend { Rational, Decimal };

/// Backend choice plus its parameters, passed explicitly to every operation.
/// Rational: error-free arithmetic over arbitrary-precision rationals.
/// Decimal: every result rounded to `digits` significant decimal digits,
/// round-half-to-even.
struct ScalarContext {
    Backend backend = Backend::Rational;
    int digits = 30;              // D, decimal backend only (D >= 2)
    std::size_t term_cap = 10000; // T_max for grossnumber normalization

    static ScalarContext rational() { return ScalarContext{}; }
    static ScalarContext decimal(int digits) {
        ScalarContext c;
        c.backend = Backend::Decimal;
        c.digits = digits;
        return c;
    }

    bool is_rational() const { return backend == Backend::Rational; }

    Scalar round(const BigRat& v) const;
    Scalar add(const Scalar& a, const Scalar& b) const { return round(a.value() + b.value()); }
    Scalar sub(const Scalar& a, const Scalar& b) const { return round(a.value() - b.value()); }
    Scalar mul(const Scalar& a, const Scalar& b) const { return round(a.value() * b.value()); }
    Scalar div(const Scalar& a, const Scalar& b) const;
};

/// Round v to `digits` significant decimal digits, half-to-even.
BigRat round_significant(const BigRat& v, int digits);

/// floor(log10(|v|)); v must be nonzero.
long floor_log10(const BigRat& v);

// -- text --

/// Parse "7", "-3/4", "14.3", "1.5e-8" into an exact rational.
Scalar parse_scalar(std::string_view text);

/// Exact rational rendering: "n" or "n/d".
std::string to_ratio_string(const Scalar& s);

/// Fixed-point rendering with `decimals` digits after the point (half-even).
std::string to_fixed_string(const Scalar& s, int decimals);

/// Scientific rendering with `sig` significant digits: "1.52299797e-08".
std::string to_sci_string(const Scalar& s, int sig);

/// Backend-appropriate exact rendering: rational "n/d"; decimal "m.mm...e±k".
/// parse_scalar(format_scalar(x)) == x in both modes.
std::string format_scalar(const Scalar& s, const ScalarContext& ctx);

// -- elementary functions at the scalar level --
//
// Decimal backend: computed by exact rational series with guard digits, then
// rounded to D significant digits. Rational backend only admits the points
// where the value is rational (exp 0, ln 1, sin 0, cos 0); anywhere else the
// value would be irrational and a DomainError is thrown.

Scalar exp_scalar(const Scalar& x, const ScalarContext& ctx);
Scalar ln_scalar(const Scalar& x, const ScalarContext& ctx);
Scalar sin_scalar(const Scalar& x, const ScalarContext& ctx);
Scalar cos_scalar(const Scalar& x, const ScalarContext& ctx);

} // namespace iode

#endif
