#include "qvertex/parser.hpp"
#include <cctype>

namespace qvertex {

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;
    const std::vector<std::string>& vars;

    explicit Parser(const std::string& text, const std::vector<std::string>& vs)
        : s(text), vars(vs) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    [[noreturn]] void fail(const std::string& why) {
        throw ParseError(why + " at offset " + std::to_string(pos) + " in '" + s + "'");
    }

    RationalElement expr() {
        RationalElement acc = term();
        for (;;) {
            if (eat('+')) acc = acc + term();
            else if (eat('-')) acc = acc - term();
            else return acc;
        }
    }

    RationalElement term() {
        RationalElement acc = factor();
        for (;;) {
            if (eat('*')) acc = acc * factor();
            else if (eat('/')) {
                RationalElement d = factor();
                if (d.is_zero()) fail("division by zero");
                acc = acc / d;
            } else return acc;
        }
    }

    RationalElement factor() {
        if (eat('-')) return -factor();
        if (eat('+')) return factor();
        RationalElement base = primary();
        if (eat('^')) {
            long e = integer();
            if (e < 0 && base.is_zero()) fail("zero to negative power");
            base = base.pow(e);
        }
        return base;
    }

    long integer() {
        skip_ws();
        bool neg = false;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) neg = s[pos++] == '-';
        if (pos >= s.size() || !std::isdigit((unsigned char)s[pos])) fail("expected integer");
        long v = 0;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) {
            v = v * 10 + (s[pos++] - '0');
            if (v > (1L << 30)) fail("exponent too large");
        }
        return neg ? -v : v;
    }

    RationalElement primary() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end of input");
        char c = s[pos];
        if (c == '(') {
            ++pos;
            RationalElement e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit((unsigned char)c)) {
            size_t start = pos;
            while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
            return RationalElement::constant(vars,
                Scalar(ExactRational::parse(s.substr(start, pos - start))));
        }
        if (std::isalpha((unsigned char)c) || c == '_') {
            size_t start = pos;
            while (pos < s.size() &&
                   (std::isalnum((unsigned char)s[pos]) || s[pos] == '_')) ++pos;
            std::string name = s.substr(start, pos - start);
            if (name == "q") return RationalElement::constant(vars, Scalar::q());
            for (auto& v : vars)
                if (v == name) return RationalElement::variable(vars, name);
            fail("unknown variable '" + name + "'");
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

} // namespace

RationalElement parse_rational(const std::string& text, const std::vector<std::string>& vars) {
    if ((int)vars.size() > kMaxVars) throw ParseError("too many variables");
    Parser p(text, vars);
    RationalElement r = p.expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return r;
}

Scalar parse_scalar(const std::string& text) {
    RationalElement r = parse_rational(text, {});
    // zero-arity tables hold a single constant each
    Scalar n, d;
    if (!r.num.terms.empty()) n = r.num.terms.begin()->second;
    if (!r.den.terms.empty()) d = r.den.terms.begin()->second;
    if (d.is_zero()) throw ParseError("zero denominator in scalar expression");
    return n / d;
}

} // namespace qvertex
