#include "qvertex/rational.hpp"
#include "qvertex/errors.hpp"

namespace qvertex {

ExactRational::ExactRational(long num, long den) : v_(num, den) {
    if (den == 0) throw DivisionByZero("rational with zero denominator");
    v_.canonicalize();
}

ExactRational& ExactRational::operator/=(const ExactRational& o) {
    if (o.is_zero()) throw DivisionByZero("rational division by zero");
    v_ /= o.v_;
    return *this;
}

ExactRational ExactRational::parse(const std::string& text) {
    std::string s = text;
    if (!s.empty() && s[0] == '+') s = s.substr(1);
    mpq_class v;
    if (s.empty() || v.set_str(s, 10) != 0)
        throw ParseError("bad rational literal: '" + text + "'");
    if (sgn(v.get_den()) == 0) throw DivisionByZero("rational literal with zero denominator");
    v.canonicalize();
    return ExactRational(std::move(v));
}

ExactRational ExactRational::inv() const {
    if (is_zero()) throw DivisionByZero("inverting zero");
    return ExactRational(mpq_class(1) / v_);
}

ExactRational ExactRational::pow(long e) const {
    if (e == 0) return ExactRational(1);
    ExactRational base = e < 0 ? inv() : *this;
    unsigned long k = e < 0 ? -(unsigned long)e : (unsigned long)e;
    mpq_class acc(1);
    mpq_class b = base.v_;
    while (k) {
        if (k & 1) acc *= b;
        b *= b;
        k >>= 1;
    }
    return ExactRational(std::move(acc));
}

ExactRational binomial(long n, long k) {
    if (k < 0) return ExactRational(0);
    mpq_class acc(1);
    for (long i = 0; i < k; ++i) {
        acc *= mpq_class(n - i);
        acc /= mpq_class(i + 1);
    }
    return ExactRational(std::move(acc));
}

} // namespace qvertex
