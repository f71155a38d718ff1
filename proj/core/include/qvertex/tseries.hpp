#pragma once
#include "qvertex/scalar.hpp"
#include "qvertex/errors.hpp"
#include <map>

namespace qvertex {

// Lower-truncated Laurent series in t over Q(q), exact on [low, prec).
// Stored terms all lie in that window and carry nonzero coefficients; the
// window, not the term list, is the statement of what is known. `exhausted`
// is sticky: it marks that some ancestor operation discarded real content
// at or above prec.
class TruncatedTSeries {
public:
    TruncatedTSeries() : low_(0), prec_(0), exhausted_(false) {}
    TruncatedTSeries(long low, long prec) : low_(low), prec_(prec), exhausted_(false) {}

    static TruncatedTSeries zero(long prec) { return TruncatedTSeries(prec, prec); }
    static TruncatedTSeries constant(const Scalar& c, long prec);
    static TruncatedTSeries monomial(const Scalar& c, long e, long prec);

    long low() const { return low_; }
    long prec() const { return prec_; }
    bool exhausted() const { return exhausted_; }
    bool known_zero() const { return terms_.empty(); }
    const std::map<long, Scalar>& terms() const { return terms_; }

    // Lowest exponent that can carry a nonzero coefficient of the true object.
    long effective_low() const { return terms_.empty() ? prec_ : terms_.begin()->first; }

    Scalar coeff(long e) const;
    void set(long e, Scalar c);
    void mark_exhausted() { exhausted_ = true; }

    TruncatedTSeries operator-() const;
    friend TruncatedTSeries operator+(const TruncatedTSeries& a, const TruncatedTSeries& b);
    friend TruncatedTSeries operator-(const TruncatedTSeries& a, const TruncatedTSeries& b);
    friend TruncatedTSeries operator*(const TruncatedTSeries& a, const TruncatedTSeries& b);
    TruncatedTSeries scaled(const Scalar& s) const;
    TruncatedTSeries shifted(long d) const; // multiply by t^d

    // Geometric-series inversion. Throws ZeroLeadingWindow when no nonzero
    // leading coefficient is visible in the window.
    TruncatedTSeries inverted() const;

    // Structural equality (same window, same terms).
    friend bool operator==(const TruncatedTSeries& a, const TruncatedTSeries& b) {
        return a.low_ == b.low_ && a.prec_ == b.prec_ && a.terms_ == b.terms_;
    }

    // Equality of the represented objects on the overlap of their windows.
    bool agrees_with(const TruncatedTSeries& o) const;

    std::string str() const;

private:
    std::map<long, Scalar> terms_;
    long low_;
    long prec_;
    bool exhausted_;
};

} // namespace qvertex
