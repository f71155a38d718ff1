#include "qvertex/tseries.hpp"

namespace qvertex {

TruncatedTSeries TruncatedTSeries::constant(const Scalar& c, long prec) {
    return monomial(c, 0, prec);
}

TruncatedTSeries TruncatedTSeries::monomial(const Scalar& c, long e, long prec) {
    TruncatedTSeries r(e, prec);
    if (e >= prec) throw WindowTooSmall("monomial exponent at or above precision");
    if (!c.is_zero()) r.terms_[e] = c;
    return r;
}

Scalar TruncatedTSeries::coeff(long e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Scalar() : it->second;
}

void TruncatedTSeries::set(long e, Scalar c) {
    if (e >= prec_) {
        if (!c.is_zero()) exhausted_ = true;
        return;
    }
    if (e < low_) low_ = e;
    if (c.is_zero()) terms_.erase(e);
    else terms_[e] = std::move(c);
}

TruncatedTSeries TruncatedTSeries::operator-() const {
    TruncatedTSeries r(low_, prec_);
    r.exhausted_ = exhausted_;
    for (auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

TruncatedTSeries operator+(const TruncatedTSeries& a, const TruncatedTSeries& b) {
    TruncatedTSeries r(std::min(a.low_, b.low_), std::min(a.prec_, b.prec_));
    r.exhausted_ = a.exhausted_ || b.exhausted_;
    for (auto& [e, c] : a.terms_) {
        if (e >= r.prec_) { r.exhausted_ = true; continue; }
        r.terms_[e] = c;
    }
    for (auto& [e, c] : b.terms_) {
        if (e >= r.prec_) { r.exhausted_ = true; continue; }
        auto [it, fresh] = r.terms_.try_emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) r.terms_.erase(it);
        }
    }
    return r;
}

TruncatedTSeries operator-(const TruncatedTSeries& a, const TruncatedTSeries& b) {
    return a + (-b);
}

TruncatedTSeries operator*(const TruncatedTSeries& a, const TruncatedTSeries& b) {
    long la = a.effective_low(), lb = b.effective_low();
    TruncatedTSeries r(la + lb, std::min(a.prec_ + lb, b.prec_ + la));
    r.exhausted_ = a.exhausted_ || b.exhausted_;
    for (auto& [ea, ca] : a.terms_)
        for (auto& [eb, cb] : b.terms_) {
            if (ea + eb >= r.prec_) continue; // beyond window, not content loss
            Scalar prod = ca * cb;
            if (prod.is_zero()) continue;
            auto [it, fresh] = r.terms_.try_emplace(ea + eb, prod);
            if (!fresh) {
                it->second += prod;
                if (it->second.is_zero()) r.terms_.erase(it);
            }
        }
    return r;
}

TruncatedTSeries TruncatedTSeries::scaled(const Scalar& s) const {
    TruncatedTSeries r(low_, prec_);
    r.exhausted_ = exhausted_;
    if (s.is_zero()) return r;
    for (auto& [e, c] : terms_) {
        Scalar v = c * s;
        if (!v.is_zero()) r.terms_[e] = v;
    }
    return r;
}

TruncatedTSeries TruncatedTSeries::shifted(long d) const {
    TruncatedTSeries r(low_ + d, prec_ + d);
    r.exhausted_ = exhausted_;
    for (auto& [e, c] : terms_) r.terms_[e + d] = c;
    return r;
}

TruncatedTSeries TruncatedTSeries::inverted() const {
    if (terms_.empty())
        throw ZeroLeadingWindow("inverting a t-series with empty window [" +
                                std::to_string(low_) + "," + std::to_string(prec_) + ")");
    long e0 = terms_.begin()->first;
    const Scalar c0 = terms_.begin()->second;
    long rel = prec_ - e0; // relative precision of the input
    // u = f * t^-e0 / c0 - 1 has valuation >= 1
    TruncatedTSeries u(1, rel);
    Scalar c0i = c0.inv();
    for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
        u.terms_[it->first - e0] = it->second * c0i;
    TruncatedTSeries geom = TruncatedTSeries::constant(Scalar(1), rel);
    TruncatedTSeries upow = TruncatedTSeries::constant(Scalar(1), rel);
    for (long k = 1; k < rel && !upow.known_zero(); ++k) {
        upow = upow * (-u);
        geom = geom + upow;
    }
    TruncatedTSeries r = geom.scaled(c0i).shifted(-e0);
    r.exhausted_ = exhausted_;
    return r;
}

bool TruncatedTSeries::agrees_with(const TruncatedTSeries& o) const {
    long lo = std::max(low_, o.low_);
    long hi = std::min(prec_, o.prec_);
    if (lo >= hi) throw WindowTooSmall("t-series windows do not overlap");
    for (long e = lo; e < hi; ++e)
        if (coeff(e) != o.coeff(e)) return false;
    return true;
}

std::string TruncatedTSeries::str() const {
    std::string out;
    for (auto& [e, c] : terms_) {
        if (!out.empty()) out += " + ";
        std::string cs = c.str();
        if (cs == "1") {
            out += "t^" + std::to_string(e);
            continue;
        }
        bool atomic = c.is_constant() || (cs.front() == '(' && cs.back() == ')');
        out += (atomic ? cs : "(" + cs + ")") + "*t^" + std::to_string(e);
    }
    if (out.empty()) out = "0";
    out += " + O(t^" + std::to_string(prec_) + ")";
    return out;
}

} // namespace qvertex
