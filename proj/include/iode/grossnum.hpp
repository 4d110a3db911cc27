#ifndef IODE_GROSSNUM_HPP
#define IODE_GROSSNUM_HPP

#include <string>
#include <string_view>
#include <vector>

#include "iode/scalar.hpp"

namespace iode {

/// One term digit*#^power of a grossone numeral. The digit is purely finite
/// and nonzero once normalized; the power is an exact rational.
struct GrossTerm {
    Scalar digit;
    BigRat power;
};

struct Parts;

/// A number in the positional numeral system with the infinite radix #:
/// a finite sum of terms with strictly decreasing rational powers. The empty
/// sum is zero. Construct through normalize() or the factory helpers; the
/// invariants (sorted, distinct powers, no zero digits) hold for every value
/// handed out by this module.
class GrossNumber {
public:
    GrossNumber() = default; // zero

    static GrossNumber from_scalar(const Scalar& s);
    static GrossNumber unit(const BigRat& power); // 1*#^power
    static GrossNumber grossone() { return unit(1); }
    static GrossNumber infinitesimal() { return unit(-1); } // #^-1

    const std::vector<GrossTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    /// Leading (highest-power) term; number must be nonzero.
    const GrossTerm& leading() const { return terms_.front(); }

    friend bool operator==(const GrossNumber& a, const GrossNumber& b);
    friend bool operator!=(const GrossNumber& a, const GrossNumber& b) { return !(a == b); }

private:
    explicit GrossNumber(std::vector<GrossTerm> sorted) : terms_(std::move(sorted)) {}
    friend GrossNumber normalize(std::vector<GrossTerm> raw, const ScalarContext& ctx);
    friend GrossNumber add(const GrossNumber&, const GrossNumber&, const ScalarContext&);
    friend GrossNumber negate(const GrossNumber&);
    friend Parts parts(const GrossNumber&);

    std::vector<GrossTerm> terms_; // strictly decreasing by power
};

/// Merge equal powers (digits summed under ctx), drop zeros, sort decreasing.
/// Throws CapExceeded when more than ctx.term_cap terms remain.
GrossNumber normalize(std::vector<GrossTerm> raw, const ScalarContext& ctx);

GrossNumber add(const GrossNumber& a, const GrossNumber& b, const ScalarContext& ctx);
GrossNumber sub(const GrossNumber& a, const GrossNumber& b, const ScalarContext& ctx);
GrossNumber negate(const GrossNumber& a); // exact in both backends
GrossNumber mul(const GrossNumber& a, const GrossNumber& b, const ScalarContext& ctx);
GrossNumber mul(const GrossNumber& a, const Scalar& k, const ScalarContext& ctx);

struct DivResult {
    GrossNumber quotient;
    bool truncated = false; // series stopped at the power floor, not at remainder 0
};

/// Long division by the leading term of b: emit lead(r)/lead(b), subtract,
/// repeat until the remainder vanishes or the next quotient power would fall
/// below power_floor (then the Truncated flag is set). Exact whenever b is a
/// single term. Throws DivisionByZero when b is zero.
DivResult div(const GrossNumber& a, const GrossNumber& b, const BigRat& power_floor,
              const ScalarContext& ctx);

enum class Ordering { Less, Equal, Greater };

/// Sign of a-b, decided by the leading digit of the normalized difference.
Ordering compare(const GrossNumber& a, const GrossNumber& b, const ScalarContext& ctx);

/// Grossdigit at power p, or zero when absent.
Scalar coefficient_at(const GrossNumber& x, const BigRat& p);

struct Parts {
    GrossNumber infinite;      // powers > 0
    Scalar finite;             // power 0 digit
    GrossNumber infinitesimal; // powers < 0
};

/// Split by power sign; the three parts recombine to x.
Parts parts(const GrossNumber& x);

/// True iff x has neither infinite nor infinitesimal parts.
bool is_purely_finite(const GrossNumber& x);

/// x^n for n >= 0 by repeated squaring; x^0 == 1.
GrossNumber pow_int(const GrossNumber& x, long n, const ScalarContext& ctx);

/// Canonical text form, e.g. "143/10*#^281/5 + 27/5" (rational backend) or
/// "1.43e+01*#^56.2 + 5.4" style digits under the decimal backend.
/// parse_gross(render(x)) == x.
std::string render(const GrossNumber& x, const ScalarContext& ctx);
GrossNumber parse_gross(std::string_view text, const ScalarContext& ctx);

} // namespace iode

#endif
