#include "iode/parser.hpp"

#include <cctype>

namespace iode {

struct Expr {
    enum class Kind { Const, VarX, VarY, Add, Sub, Mul, Div, Neg, Pow, Call };
    Kind kind;
    Scalar value;                        // Const
    ElemFun fn = ElemFun::Exp;           // Call
    long exponent = 0;                   // Pow (may be negative)
    std::shared_ptr<const Expr> a, b;    // children
};

namespace {

using ExprPtr = std::shared_ptr<const Expr>;

ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

class Parser {
public:
    Parser(std::string_view src, int arity) : src_(src), arity_(arity) {}

    ExprPtr run() {
        skip_ws();
        if (pos_ >= src_.size()) throw SyntaxError("empty expression", pos_);
        ExprPtr e = expr();
        skip_ws();
        if (pos_ != src_.size()) throw SyntaxError("unexpected trailing input", pos_);
        return e;
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;
    int arity_;

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }
    bool consume(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    ExprPtr expr() {
        ExprPtr lhs = term();
        while (true) {
            const char c = peek();
            if (c != '+' && c != '-') return lhs;
            ++pos_;
            ExprPtr rhs = term();
            lhs = make({c == '+' ? Expr::Kind::Add : Expr::Kind::Sub, {}, {}, 0, lhs, rhs});
        }
    }

    ExprPtr term() {
        ExprPtr lhs = factor();
        while (true) {
            const char c = peek();
            if (c != '*' && c != '/') return lhs;
            ++pos_;
            ExprPtr rhs = factor();
            lhs = make({c == '*' ? Expr::Kind::Mul : Expr::Kind::Div, {}, {}, 0, lhs, rhs});
        }
    }

    ExprPtr factor() {
        if (consume('-')) return make({Expr::Kind::Neg, {}, {}, 0, factor(), nullptr});
        return power();
    }

    ExprPtr power() {
        ExprPtr base = atom();
        if (peek() == '^') {
            ++pos_;
            base = make({Expr::Kind::Pow, {}, {}, integer_literal(), base, nullptr});
        }
        return base;
    }

    long integer_literal() {
        skip_ws();
        bool neg = false;
        if (pos_ < src_.size() && (src_[pos_] == '-' || src_[pos_] == '+')) neg = src_[pos_++] == '-';
        if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
            throw SyntaxError("expected integer exponent", pos_);
        long v = 0;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            v = v * 10 + (src_[pos_++] - '0');
            if (v > 1000000) throw SyntaxError("exponent too large", pos_);
        }
        return neg ? -v : v;
    }

    ExprPtr atom() {
        skip_ws();
        if (pos_ >= src_.size()) throw SyntaxError("unexpected end of expression", pos_);
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            ExprPtr e = expr();
            if (!consume(')')) throw SyntaxError("expected ')'", pos_);
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
    }

    ExprPtr number() {
        const std::size_t start = pos_;
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                ++pos_;
            } else if ((c == 'e' || c == 'E') && pos_ + 1 < src_.size()) {
                std::size_t k = pos_ + 1;
                if (src_[k] == '+' || src_[k] == '-') ++k;
                if (k < src_.size() && std::isdigit(static_cast<unsigned char>(src_[k]))) {
                    pos_ = k;
                } else {
                    break;
                }
            } else {
                break;
            }
        }
        Scalar v = parse_scalar(src_.substr(start, pos_ - start));
        return make({Expr::Kind::Const, v, {}, 0, nullptr, nullptr});
    }

    ExprPtr identifier() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        const std::string_view name = src_.substr(start, pos_ - start);
        if (name == "x") return make({Expr::Kind::VarX, {}, {}, 0, nullptr, nullptr});
        if (name == "y") {
            if (arity_ < 2) throw UnknownIdentifier("identifier 'y' not allowed in a single-variable expression");
            return make({Expr::Kind::VarY, {}, {}, 0, nullptr, nullptr});
        }
        ElemFun fn;
        bool is_powi = false;
        if (name == "exp")
            fn = ElemFun::Exp;
        else if (name == "ln")
            fn = ElemFun::Ln;
        else if (name == "sin")
            fn = ElemFun::Sin;
        else if (name == "cos")
            fn = ElemFun::Cos;
        else if (name == "powi")
            is_powi = true;
        else
            throw UnknownIdentifier("unknown identifier '" + std::string(name) + "'");
        if (!consume('(')) throw SyntaxError("expected '(' after function name", pos_);
        ExprPtr arg = expr();
        if (is_powi) {
            if (!consume(',')) throw SyntaxError("powi expects two arguments", pos_);
            const long n = integer_literal();
            if (!consume(')')) throw SyntaxError("expected ')'", pos_);
            return make({Expr::Kind::Pow, {}, {}, n, arg, nullptr});
        }
        if (!consume(')')) throw SyntaxError("expected ')'", pos_);
        return make({Expr::Kind::Call, {}, fn, 0, arg, nullptr});
    }
};

GrossNumber eval_node(const Expr& e, const GrossNumber& x, const GrossNumber* y,
                      const EvalContext& ctx) {
    switch (e.kind) {
    case Expr::Kind::Const:
        // literals are exact rationals; the backend rounds them on use
        return GrossNumber::from_scalar(ctx.scalar.round(e.value.value()));
    case Expr::Kind::VarX:
        return x;
    case Expr::Kind::VarY:
        return *y;
    case Expr::Kind::Add:
        return add(eval_node(*e.a, x, y, ctx), eval_node(*e.b, x, y, ctx), ctx.scalar);
    case Expr::Kind::Sub:
        return sub(eval_node(*e.a, x, y, ctx), eval_node(*e.b, x, y, ctx), ctx.scalar);
    case Expr::Kind::Mul:
        return mul(eval_node(*e.a, x, y, ctx), eval_node(*e.b, x, y, ctx), ctx.scalar);
    case Expr::Kind::Div: {
        DivResult r = div(eval_node(*e.a, x, y, ctx), eval_node(*e.b, x, y, ctx),
                          ctx.div_power_floor, ctx.scalar);
        if (r.truncated && ctx.truncation_flag) *ctx.truncation_flag = true;
        return r.quotient;
    }
    case Expr::Kind::Neg:
        return negate(eval_node(*e.a, x, y, ctx));
    case Expr::Kind::Pow: {
        GrossNumber base = eval_node(*e.a, x, y, ctx);
        if (e.exponent >= 0) return pow_int(base, e.exponent, ctx.scalar);
        DivResult r = div(GrossNumber::from_scalar(Scalar(1)), pow_int(base, -e.exponent, ctx.scalar),
                          ctx.div_power_floor, ctx.scalar);
        if (r.truncated && ctx.truncation_flag) *ctx.truncation_flag = true;
        return r.quotient;
    }
    case Expr::Kind::Call:
        return lift(e.fn, eval_node(*e.a, x, y, ctx), ctx.lift_order, ctx.scalar);
    }
    throw Error("corrupt expression node");
}

void print_node(const Expr& e, std::string& out) {
    auto paren = [&](const Expr& child) {
        out += '(';
        print_node(child, out);
        out += ')';
    };
    switch (e.kind) {
    case Expr::Kind::Const:
        out += to_ratio_string(e.value);
        return;
    case Expr::Kind::VarX:
        out += 'x';
        return;
    case Expr::Kind::VarY:
        out += 'y';
        return;
    case Expr::Kind::Add:
        paren(*e.a);
        out += " + ";
        paren(*e.b);
        return;
    case Expr::Kind::Sub:
        paren(*e.a);
        out += " - ";
        paren(*e.b);
        return;
    case Expr::Kind::Mul:
        paren(*e.a);
        out += "*";
        paren(*e.b);
        return;
    case Expr::Kind::Div:
        paren(*e.a);
        out += "/";
        paren(*e.b);
        return;
    case Expr::Kind::Neg:
        out += '-';
        paren(*e.a);
        return;
    case Expr::Kind::Pow:
        out += "powi(";
        print_node(*e.a, out);
        out += ", " + std::to_string(e.exponent) + ")";
        return;
    case Expr::Kind::Call:
        switch (e.fn) {
        case ElemFun::Exp: out += "exp"; break;
        case ElemFun::Ln: out += "ln"; break;
        case ElemFun::Sin: out += "sin"; break;
        case ElemFun::Cos: out += "cos"; break;
        }
        out += '(';
        print_node(*e.a, out);
        out += ')';
        return;
    }
}

} // namespace

GrossNumber RhsFunction::evaluate(const GrossNumber& x, const GrossNumber& y,
                                  const EvalContext& ctx) const {
    if (!ast_) throw Error("evaluating an empty RhsFunction");
    return eval_node(*ast_, x, &y, ctx);
}

GrossNumber RhsFunction::evaluate(const GrossNumber& x, const EvalContext& ctx) const {
    if (!ast_) throw Error("evaluating an empty RhsFunction");
    if (arity_ != 1) throw Error("expression expects two variables");
    return eval_node(*ast_, x, nullptr, ctx);
}

std::string RhsFunction::print() const {
    std::string out;
    if (ast_) print_node(*ast_, out);
    return out;
}

RhsFunction parse_rhs(std::string_view src, int arity) {
    RhsFunction f;
    f.ast_ = Parser(src, arity).run();
    f.arity_ = arity;
    return f;
}

} // namespace iode
