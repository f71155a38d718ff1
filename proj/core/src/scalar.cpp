#include "qvertex/scalar.hpp"
#include "qvertex/errors.hpp"

namespace qvertex {

RationalFunctionQ::RationalFunctionQ(QPoly n, QPoly d, bool) : num_(std::move(n)), den_(std::move(d)) {}

RationalFunctionQ RationalFunctionQ::q() {
    return RationalFunctionQ(QPoly::variable(), QPoly(ExactRational(1)), true);
}

RationalFunctionQ RationalFunctionQ::make(QPoly n, QPoly d) {
    if (d.is_zero()) throw DivisionByZero("rational function with zero denominator");
    if (n.is_zero()) return RationalFunctionQ();
    if (d.is_constant()) {
        // den normalizes to 1
        return RationalFunctionQ(n.scaled(d.leading().inv()), QPoly(ExactRational(1)), true);
    }
    if (!n.is_constant()) {
        QPoly g = QPoly::gcd(n, d);
        if (g.degree() > 0) {
            n = QPoly::divrem(n, g).first;
            d = QPoly::divrem(d, g).first;
        }
    }
    ExactRational lead = d.leading();
    if (!lead.is_one()) {
        ExactRational li = lead.inv();
        n = n.scaled(li);
        d = d.scaled(li);
    }
    return RationalFunctionQ(std::move(n), std::move(d), true);
}

RationalFunctionQ RationalFunctionQ::of(QPoly num, QPoly den) {
    return make(std::move(num), std::move(den));
}

RationalFunctionQ RationalFunctionQ::of_reduced(QPoly num, QPoly den) {
    if (den.is_zero()) throw DivisionByZero("rational function with zero denominator");
    if (num.is_zero()) return RationalFunctionQ();
    if (den.is_constant())
        return RationalFunctionQ(num.scaled(den.leading().inv()), QPoly(ExactRational(1)), true);
    ExactRational lead = den.leading();
    if (!lead.is_one()) {
        ExactRational li = lead.inv();
        num = num.scaled(li);
        den = den.scaled(li);
    }
    return RationalFunctionQ(std::move(num), std::move(den), true);
}

ExactRational RationalFunctionQ::as_rational() const {
    if (!is_constant()) throw QvError("nonconstant scalar where a rational was required: " + str());
    if (num_.is_zero()) return ExactRational(0);
    return num_.coeff(0) / den_.coeff(0);
}

RationalFunctionQ RationalFunctionQ::operator-() const {
    return RationalFunctionQ(-num_, den_, true);
}

RationalFunctionQ operator+(const RationalFunctionQ& a, const RationalFunctionQ& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.is_constant() && b.is_constant())
        return RationalFunctionQ(a.as_rational() + b.as_rational());
    if (a.den_ == b.den_) return RationalFunctionQ::make(a.num_ + b.num_, a.den_);
    QPoly g = QPoly::gcd(a.den_, b.den_);
    if (g.degree() > 0) {
        QPoly da = QPoly::divrem(a.den_, g).first;
        QPoly db = QPoly::divrem(b.den_, g).first;
        return RationalFunctionQ::make(a.num_ * db + b.num_ * da, a.den_ * db);
    }
    return RationalFunctionQ::make(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunctionQ operator-(const RationalFunctionQ& a, const RationalFunctionQ& b) {
    return a + (-b);
}

RationalFunctionQ operator*(const RationalFunctionQ& a, const RationalFunctionQ& b) {
    if (a.is_zero() || b.is_zero()) return RationalFunctionQ();
    if (a.is_constant() && b.is_constant())
        return RationalFunctionQ(a.as_rational() * b.as_rational());
    // cross-cancel first; the factors are stored reduced, so the result of
    // multiplying the reduced parts needs no further gcd
    QPoly an = a.num_, bd = b.den_;
    if (!an.is_constant() && !bd.is_constant()) {
        QPoly g = QPoly::gcd(an, bd);
        if (g.degree() > 0) {
            an = QPoly::divrem(an, g).first;
            bd = QPoly::divrem(bd, g).first;
        }
    }
    QPoly bn = b.num_, ad = a.den_;
    if (!bn.is_constant() && !ad.is_constant()) {
        QPoly g = QPoly::gcd(bn, ad);
        if (g.degree() > 0) {
            bn = QPoly::divrem(bn, g).first;
            ad = QPoly::divrem(ad, g).first;
        }
    }
    QPoly n = an * bn, d = ad * bd;
    if (d.is_constant())
        return RationalFunctionQ(n.scaled(d.leading().inv()), QPoly(ExactRational(1)), true);
    ExactRational lead = d.leading();
    if (!lead.is_one()) {
        ExactRational li = lead.inv();
        n = n.scaled(li);
        d = d.scaled(li);
    }
    return RationalFunctionQ(std::move(n), std::move(d), true);
}

RationalFunctionQ operator/(const RationalFunctionQ& a, const RationalFunctionQ& b) {
    return a * b.inv();
}

RationalFunctionQ RationalFunctionQ::inv() const {
    if (is_zero()) throw DivisionByZero("inverting zero scalar");
    // already reduced; only the monic-denominator normalization is needed
    QPoly n = den_, d = num_;
    if (d.is_constant()) return RationalFunctionQ(n.scaled(d.leading().inv()), QPoly(ExactRational(1)), true);
    ExactRational li = d.leading().inv();
    return RationalFunctionQ(n.scaled(li), d.scaled(li), true);
}

RationalFunctionQ RationalFunctionQ::pow(long e) const {
    if (e == 0) return RationalFunctionQ(1);
    RationalFunctionQ base = e < 0 ? inv() : *this;
    long k = e < 0 ? -e : e;
    RationalFunctionQ acc(1);
    while (k) {
        if (k & 1) acc = acc * base;
        if (k >>= 1) base = base * base;
    }
    return acc;
}

RationalFunctionQ RationalFunctionQ::specialized(const ExactRational& qval) const {
    ExactRational d = den_.eval(qval);
    if (d.is_zero())
        throw ZeroDenominator("q = " + qval.str() + " zeroes denominator of " + str());
    return RationalFunctionQ(num_.eval(qval) / d);
}

std::string RationalFunctionQ::str() const {
    if (den_.is_constant()) return num_.str(); // den == 1 by invariant
    std::string n = num_.str();
    bool n_atomic = num_.is_constant() && !num_.is_zero() && num_.coeff(0).sign() > 0 &&
                    num_.coeff(0).raw().get_den() == 1;
    std::string out = n_atomic ? n : "(" + n + ")";
    out += "/(" + den_.str() + ")";
    return out;
}

} // namespace qvertex
