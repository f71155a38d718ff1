#pragma once
#include <gmpxx.h>
#include <string>

namespace qvertex {

// Arbitrary-precision rational. Always reduced, denominator always positive.
class ExactRational {
public:
    ExactRational() : v_(0) {}
    ExactRational(long n) : v_(n) {}
    ExactRational(long num, long den);
    explicit ExactRational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }
    // integers are canonical as they stand; steals the limbs
    explicit ExactRational(mpz_class z) : v_() {
        mpz_swap(mpq_numref(v_.get_mpq_t()), z.get_mpz_t());
    }

    // Accepts "-12", "3/4"; no whitespace, no decimals.
    static ExactRational parse(const std::string& text);

    ExactRational operator-() const { return ExactRational(mpq_class(-v_)); }
    ExactRational& operator+=(const ExactRational& o) { v_ += o.v_; return *this; }
    ExactRational& operator-=(const ExactRational& o) { v_ -= o.v_; return *this; }
    ExactRational& operator*=(const ExactRational& o) { v_ *= o.v_; return *this; }
    ExactRational& operator/=(const ExactRational& o);

    friend ExactRational operator+(ExactRational a, const ExactRational& b) { return a += b; }
    friend ExactRational operator-(ExactRational a, const ExactRational& b) { return a -= b; }
    friend ExactRational operator*(ExactRational a, const ExactRational& b) { return a *= b; }
    friend ExactRational operator/(ExactRational a, const ExactRational& b) { return a /= b; }

    friend bool operator==(const ExactRational& a, const ExactRational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const ExactRational& a, const ExactRational& b) { return a.v_ != b.v_; }
    friend bool operator<(const ExactRational& a, const ExactRational& b) { return a.v_ < b.v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }

    ExactRational inv() const;
    ExactRational pow(long e) const;

    std::string str() const { return v_.get_str(); }
    const mpq_class& raw() const { return v_; }

private:
    mpq_class v_;
};

// n over k for arbitrary integer n, k >= 0. Used by every binomial expansion.
ExactRational binomial(long n, long k);

} // namespace qvertex
