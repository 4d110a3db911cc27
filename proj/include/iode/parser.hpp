#ifndef IODE_PARSER_HPP
#define IODE_PARSER_HPP

#include <memory>
#include <string>
#include <string_view>

#include "iode/elemfun.hpp"
#include "iode/grossnum.hpp"

namespace iode {

struct Expr; // expression tree over {x, y, literals, + - * /, ^n, exp ln sin cos powi}

/// Evaluation parameters: scalar backend, infinitesimal order K retained by
/// elementary lifts, and the power floor handed to grossnumber division.
struct EvalContext {
    ScalarContext scalar;
    int lift_order = 8;
    BigRat div_power_floor; // quotients truncate below this power
    bool* truncation_flag = nullptr; // set when any division truncates

    static EvalContext make(const ScalarContext& sc, int lift_order) {
        EvalContext e;
        e.scalar = sc;
        e.lift_order = lift_order;
        e.div_power_floor = BigRat(-(lift_order + 4));
        return e;
    }
};

/// A parsed black-box function f(x,y) (arity 2) or f(x) (arity 1).
/// Immutable and shareable; evaluation is pure.
class RhsFunction {
public:
    RhsFunction() = default;

    GrossNumber evaluate(const GrossNumber& x, const GrossNumber& y, const EvalContext& ctx) const;
    GrossNumber evaluate(const GrossNumber& x, const EvalContext& ctx) const; // arity 1

    int arity() const { return arity_; }
    bool valid() const { return static_cast<bool>(ast_); }
    std::string print() const;

private:
    friend RhsFunction parse_rhs(std::string_view, int);
    std::shared_ptr<const Expr> ast_;
    int arity_ = 2;
};

/// Parse an expression with standard precedence (* / over + -, unary minus,
/// parentheses, function application). Decimal literals become exact
/// rationals. `arity` 2 admits identifiers x and y; arity 1 only x.
/// Throws SyntaxError (with position) or UnknownIdentifier.
RhsFunction parse_rhs(std::string_view src, int arity = 2);

} // namespace iode

#endif
