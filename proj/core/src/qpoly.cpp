#include "qvertex/qpoly.hpp"
#include "qvertex/errors.hpp"

namespace qvertex {

QPoly::QPoly(ExactRational c) {
    if (!c.is_zero()) c_.push_back(std::move(c));
}

QPoly::QPoly(std::vector<ExactRational> coeffs) : c_(std::move(coeffs)) { trim(); }

QPoly QPoly::variable() {
    return QPoly(std::vector<ExactRational>{ExactRational(0), ExactRational(1)});
}

void QPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

ExactRational QPoly::coeff(long i) const {
    if (i < 0 || i >= (long)c_.size()) return ExactRational(0);
    return c_[i];
}

const ExactRational& QPoly::leading() const {
    if (c_.empty()) throw QvError("leading coefficient of zero polynomial");
    return c_.back();
}

QPoly QPoly::operator-() const {
    QPoly r;
    r.c_.reserve(c_.size());
    for (auto& x : c_) r.c_.push_back(-x);
    return r;
}

namespace {

// integer-only coefficient vectors take the mpz lane; mpq canonicalization
// per operation costs more than the arithmetic itself there
bool integral(const std::vector<ExactRational>& v) {
    for (auto& x : v)
        if (mpz_cmp_ui(mpq_denref(x.raw().get_mpq_t()), 1) != 0) return false;
    return true;
}

std::vector<ExactRational> wrap(std::vector<mpz_class> z) {
    std::vector<ExactRational> r;
    r.reserve(z.size());
    for (auto& c : z) r.emplace_back(std::move(c));
    return r;
}

} // namespace

QPoly operator+(const QPoly& a, const QPoly& b) {
    if (integral(a.c_) && integral(b.c_)) {
        std::vector<mpz_class> c(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < a.c_.size(); ++i)
            mpz_set(c[i].get_mpz_t(), mpq_numref(a.c_[i].raw().get_mpq_t()));
        for (size_t i = 0; i < b.c_.size(); ++i)
            mpz_add(c[i].get_mpz_t(), c[i].get_mpz_t(), mpq_numref(b.c_[i].raw().get_mpq_t()));
        return QPoly(wrap(std::move(c)));
    }
    std::vector<ExactRational> c(std::max(a.c_.size(), b.c_.size()), ExactRational(0));
    for (size_t i = 0; i < c.size(); ++i) {
        if (i < a.c_.size()) c[i] += a.c_[i];
        if (i < b.c_.size()) c[i] += b.c_[i];
    }
    return QPoly(std::move(c));
}

QPoly operator-(const QPoly& a, const QPoly& b) {
    if (integral(a.c_) && integral(b.c_)) {
        std::vector<mpz_class> c(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < a.c_.size(); ++i)
            mpz_set(c[i].get_mpz_t(), mpq_numref(a.c_[i].raw().get_mpq_t()));
        for (size_t i = 0; i < b.c_.size(); ++i)
            mpz_sub(c[i].get_mpz_t(), c[i].get_mpz_t(), mpq_numref(b.c_[i].raw().get_mpq_t()));
        return QPoly(wrap(std::move(c)));
    }
    std::vector<ExactRational> c(std::max(a.c_.size(), b.c_.size()), ExactRational(0));
    for (size_t i = 0; i < c.size(); ++i) {
        if (i < a.c_.size()) c[i] += a.c_[i];
        if (i < b.c_.size()) c[i] -= b.c_[i];
    }
    return QPoly(std::move(c));
}

QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return QPoly();
    if (integral(a.c_) && integral(b.c_)) {
        std::vector<mpz_class> c(a.c_.size() + b.c_.size() - 1);
        for (size_t i = 0; i < a.c_.size(); ++i) {
            mpz_srcptr ai = mpq_numref(a.c_[i].raw().get_mpq_t());
            if (mpz_sgn(ai) == 0) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) {
                mpz_srcptr bj = mpq_numref(b.c_[j].raw().get_mpq_t());
                if (mpz_sgn(bj) != 0) mpz_addmul(c[i + j].get_mpz_t(), ai, bj);
            }
        }
        return QPoly(wrap(std::move(c)));
    }
    std::vector<ExactRational> c(a.c_.size() + b.c_.size() - 1, ExactRational(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (size_t j = 0; j < b.c_.size(); ++j)
            c[i + j] += a.c_[i] * b.c_[j];
    }
    return QPoly(std::move(c));
}

std::pair<QPoly, QPoly> QPoly::divrem(const QPoly& a, const QPoly& b) {
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    QPoly r = a;
    std::vector<ExactRational> q;
    if (a.degree() >= b.degree()) q.assign(a.degree() - b.degree() + 1, ExactRational(0));
    while (!r.is_zero() && r.degree() >= b.degree()) {
        long shift = r.degree() - b.degree();
        ExactRational f = r.leading() / b.leading();
        q[shift] = f;
        // r -= f * x^shift * b
        for (long i = 0; i <= b.degree(); ++i)
            r.c_[i + shift] -= f * b.c_[i];
        r.trim();
    }
    return {QPoly(std::move(q)), std::move(r)};
}

namespace {

// Unit-scales p to integer coefficients with content one, keeping the
// Euclidean remainders from swelling.
QPoly primitive(const QPoly& p) {
    if (p.is_zero()) return p;
    mpz_class g(0), l(1);
    for (long i = 0; i <= p.degree(); ++i) {
        mpq_class v = p.coeff(i).raw();
        if (sgn(v) == 0) continue;
        g = ::gcd(g, mpz_class(v.get_num()));
        l = ::lcm(l, mpz_class(v.get_den()));
    }
    mpq_class s(l, g);
    s.canonicalize();
    std::vector<ExactRational> out((size_t)(p.degree() + 1));
    for (long i = 0; i <= p.degree(); ++i)
        out[(size_t)i] = ExactRational(mpq_class(p.coeff(i).raw() * s));
    return QPoly(std::move(out));
}

// Fraction-free remainder: repeatedly scales by the divisor's leading
// coefficient instead of dividing, so integer inputs stay integer.
QPoly pseudo_rem(QPoly a, const QPoly& b) {
    long db = b.degree();
    const ExactRational& lb = b.leading();
    while (!a.is_zero() && a.degree() >= db) {
        long shift = a.degree() - db;
        ExactRational la = a.leading();
        std::vector<ExactRational> c((size_t)a.degree());
        for (long i = 0; i < a.degree(); ++i) {
            ExactRational v = a.coeff(i) * lb;
            if (i >= shift) v -= la * b.coeff(i - shift);
            c[(size_t)i] = std::move(v);
        }
        a = QPoly(std::move(c));
    }
    return a;
}

} // namespace

QPoly QPoly::gcd(QPoly a, QPoly b) {
    if (!a.is_zero() && a.is_constant()) return QPoly(ExactRational(1));
    if (!b.is_zero() && b.is_constant()) return QPoly(ExactRational(1));
    a = primitive(std::move(a));
    b = primitive(std::move(b));
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        QPoly r = primitive(pseudo_rem(std::move(a), b));
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.scaled(a.leading().inv()); // monic
}

QPoly QPoly::scaled(const ExactRational& s) const {
    if (s.is_zero()) return QPoly();
    QPoly r;
    r.c_.reserve(c_.size());
    for (auto& x : c_) r.c_.push_back(x * s);
    return r;
}

QPoly QPoly::pow(long e) const {
    if (e < 0) throw QvError("negative polynomial power");
    QPoly acc{ExactRational(1)};
    QPoly base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        if (e >>= 1) base = base * base;
    }
    return acc;
}

ExactRational QPoly::eval(const ExactRational& x) const {
    ExactRational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::string QPoly::str() const {
    if (is_zero()) return "0";
    std::string out;
    for (long i = degree(); i >= 0; --i) {
        const ExactRational& c = c_[i];
        if (c.is_zero()) continue;
        bool neg = c.sign() < 0;
        ExactRational a = neg ? -c : c;
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? "-" : "+";
        }
        bool unit = a.is_one() && i != 0;
        if (!unit) out += a.str();
        if (i != 0) {
            if (!unit) out += "*";
            out += "q";
            if (i != 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

} // namespace qvertex
