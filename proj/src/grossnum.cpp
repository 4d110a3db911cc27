#include "iode/grossnum.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace iode {

bool operator==(const GrossNumber& a, const GrossNumber& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].power != b.terms_[i].power || a.terms_[i].digit != b.terms_[i].digit)
            return false;
    return true;
}

GrossNumber GrossNumber::from_scalar(const Scalar& s) {
    GrossNumber g;
    if (!s.is_zero()) g.terms_.push_back({s, BigRat(0)});
    return g;
}

GrossNumber GrossNumber::unit(const BigRat& power) {
    GrossNumber g;
    g.terms_.push_back({Scalar(1), power});
    return g;
}

GrossNumber normalize(std::vector<GrossTerm> raw, const ScalarContext& ctx) {
    std::map<BigRat, Scalar, std::greater<BigRat>> grouped;
    for (auto& t : raw) {
        auto [it, inserted] = grouped.emplace(t.power, t.digit);
        if (!inserted) it->second = ctx.add(it->second, t.digit);
    }
    GrossNumber out;
    for (auto& [p, d] : grouped)
        if (!d.is_zero()) out.terms_.push_back({std::move(d), p});
    if (out.terms_.size() > ctx.term_cap)
        throw CapExceeded("grossnumber exceeds the term cap (" + std::to_string(ctx.term_cap) + ")");
    return out;
}

GrossNumber add(const GrossNumber& a, const GrossNumber& b, const ScalarContext& ctx) {
    // merge two sorted term lists
    std::vector<GrossTerm> out;
    out.reserve(a.terms().size() + b.terms().size());
    std::size_t i = 0, j = 0;
    while (i < a.terms().size() && j < b.terms().size()) {
        const auto& ta = a.terms()[i];
        const auto& tb = b.terms()[j];
        if (ta.power > tb.power) {
            out.push_back(ta);
            ++i;
        } else if (tb.power > ta.power) {
            out.push_back(tb);
            ++j;
        } else {
            Scalar d = ctx.add(ta.digit, tb.digit);
            if (!d.is_zero()) out.push_back({std::move(d), ta.power});
            ++i;
            ++j;
        }
    }
    for (; i < a.terms().size(); ++i) out.push_back(a.terms()[i]);
    for (; j < b.terms().size(); ++j) out.push_back(b.terms()[j]);
    if (out.size() > ctx.term_cap) throw CapExceeded("grossnumber exceeds the term cap");
    return GrossNumber(std::move(out));
}

GrossNumber negate(const GrossNumber& a) {
    std::vector<GrossTerm> out = a.terms();
    for (auto& t : out) t.digit = t.digit.negated();
    return GrossNumber(std::move(out));
}

GrossNumber sub(const GrossNumber& a, const GrossNumber& b, const ScalarContext& ctx) {
    return add(a, negate(b), ctx);
}

GrossNumber mul(const GrossNumber& a, const GrossNumber& b, const ScalarContext& ctx) {
    std::vector<GrossTerm> raw;
    raw.reserve(a.terms().size() * b.terms().size());
    for (const auto& ta : a.terms())
        for (const auto& tb : b.terms())
            raw.push_back({ctx.mul(ta.digit, tb.digit), ta.power + tb.power});
    return normalize(std::move(raw), ctx);
}

GrossNumber mul(const GrossNumber& a, const Scalar& k, const ScalarContext& ctx) {
    if (k.is_zero()) return {};
    std::vector<GrossTerm> out = a.terms();
    for (auto& t : out) t.digit = ctx.mul(t.digit, k);
    return normalize(std::move(out), ctx);
}

DivResult div(const GrossNumber& a, const GrossNumber& b, const BigRat& power_floor,
              const ScalarContext& ctx) {
    if (b.is_zero()) throw DivisionByZero("grossnumber division by zero");
    DivResult res;
    GrossNumber remainder = a;
    std::vector<GrossTerm> quotient;
    const GrossTerm& lead_b = b.leading();
    while (!remainder.is_zero()) {
        const GrossTerm& lead_r = remainder.leading();
        const BigRat qpower = lead_r.power - lead_b.power;
        if (qpower < power_floor) {
            res.truncated = true;
            break;
        }
        GrossTerm qt{ctx.div(lead_r.digit, lead_b.digit), qpower};
        quotient.push_back(qt);
        if (quotient.size() > ctx.term_cap) throw CapExceeded("division quotient exceeds the term cap");
        GrossNumber qt_num;
        qt_num = normalize({qt}, ctx);
        remainder = sub(remainder, mul(qt_num, b, ctx), ctx);
    }
    res.quotient = normalize(std::move(quotient), ctx);
    return res;
}

Ordering compare(const GrossNumber& a, const GrossNumber& b, const ScalarContext& ctx) {
    // digit rounding never flips a sign or hides a nonzero term, so the
    // leading digit of the difference is sign-exact under both backends
    const GrossNumber d = sub(a, b, ctx);
    if (d.is_zero()) return Ordering::Equal;
    return d.leading().digit.sign() > 0 ? Ordering::Greater : Ordering::Less;
}

Scalar coefficient_at(const GrossNumber& x, const BigRat& p) {
    for (const auto& t : x.terms()) {
        if (t.power == p) return t.digit;
        if (t.power < p) break;
    }
    return Scalar(0);
}

Parts parts(const GrossNumber& x) {
    Parts out;
    std::vector<GrossTerm> inf, infml;
    for (const auto& t : x.terms()) {
        if (t.power > 0)
            inf.push_back(t);
        else if (t.power < 0)
            infml.push_back(t);
        else
            out.finite = t.digit;
    }
    out.infinite = GrossNumber(std::move(inf));
    out.infinitesimal = GrossNumber(std::move(infml));
    return out;
}

bool is_purely_finite(const GrossNumber& x) {
    for (const auto& t : x.terms())
        if (t.power != 0) return false;
    return true;
}

GrossNumber pow_int(const GrossNumber& x, long n, const ScalarContext& ctx) {
    if (n < 0) throw Error("pow_int: negative exponent (divide instead)");
    GrossNumber result = GrossNumber::from_scalar(Scalar(1));
    GrossNumber base = x;
    while (n > 0) {
        if (n & 1) result = mul(result, base, ctx);
        n >>= 1;
        if (n > 0) base = mul(base, base, ctx);
    }
    return result;
}

// ------------------------------------------------------------------ text

namespace {

std::string render_power(const BigRat& p) {
    const BigInt n(boost::multiprecision::numerator(p));
    const BigInt d(boost::multiprecision::denominator(p));
    if (d == 1) return n.str();
    return n.str() + "/" + d.str();
}

} // namespace

std::string render(const GrossNumber& x, const ScalarContext& ctx) {
    if (x.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : x.terms()) {
        const bool neg = t.digit.sign() < 0;
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        out += format_scalar(t.digit.abs(), ctx);
        if (t.power != 0) {
            out += "*#^";
            out += render_power(t.power);
        }
    }
    return out;
}

GrossNumber parse_gross(std::string_view text, const ScalarContext& ctx) {
    std::vector<GrossTerm> raw;
    std::size_t i = 0;
    const std::size_t n = text.size();
    auto skip_ws = [&] {
        while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto number_end = [&](std::size_t from) {
        // span of a scalar literal: digits . / e with an exponent sign
        std::size_t j = from;
        while (j < n) {
            const char c = text[j];
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '/') {
                ++j;
            } else if ((c == 'e' || c == 'E') && j + 1 < n) {
                std::size_t k = j + 1;
                if (text[k] == '+' || text[k] == '-') ++k;
                if (k < n && std::isdigit(static_cast<unsigned char>(text[k]))) {
                    j = k;
                } else {
                    break;
                }
            } else {
                break;
            }
        }
        return j;
    };

    skip_ws();
    if (i == n) throw SyntaxError("empty grossnumber", i);
    if (text.substr(i) == "0") return {};
    bool neg = false;
    if (text[i] == '-' || text[i] == '+') neg = text[i++] == '-';
    while (true) {
        skip_ws();
        Scalar digit(1);
        bool have_digit = false;
        if (i < n && (std::isdigit(static_cast<unsigned char>(text[i])))) {
            const std::size_t end = number_end(i);
            digit = parse_scalar(text.substr(i, end - i));
            i = end;
            have_digit = true;
        }
        skip_ws();
        BigRat power = 0;
        if (i < n && (text[i] == '#' || text[i] == '*')) {
            if (text[i] == '*') {
                ++i;
                skip_ws();
                if (i >= n || text[i] != '#') throw SyntaxError("expected '#' after '*'", i);
            }
            ++i; // consume '#'
            power = 1;
            if (i < n && text[i] == '^') {
                ++i;
                skip_ws();
                bool pneg = false;
                if (i < n && (text[i] == '-' || text[i] == '+')) pneg = text[i++] == '-';
                const std::size_t end = number_end(i);
                if (end == i) throw SyntaxError("expected power after '^'", i);
                power = BigRat(parse_scalar(text.substr(i, end - i)).value());
                if (pneg) power = -power;
                i = end;
            }
        } else if (!have_digit) {
            throw SyntaxError("expected digit or '#'", i);
        }
        raw.push_back({neg ? digit.negated() : digit, power});
        skip_ws();
        if (i == n) break;
        if (text[i] == '+')
            neg = false;
        else if (text[i] == '-')
            neg = true;
        else
            throw SyntaxError("expected '+', '-' or end of input", i);
        ++i;
    }
    return normalize(std::move(raw), ctx);
}

} // namespace iode
