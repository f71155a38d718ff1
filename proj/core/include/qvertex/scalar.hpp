#pragma once
#include "qvertex/qpoly.hpp"

namespace qvertex {

// Element of Q(q), the coefficient field of the whole library. Invariants:
// denominator nonzero and monic, gcd(numerator, denominator) = 1. A run with
// specialized q never manufactures nonconstant elements, so arithmetic stays
// at plain-rational cost there.
class RationalFunctionQ {
public:
    RationalFunctionQ() : num_(), den_(ExactRational(1)) {}
    RationalFunctionQ(long n) : num_(ExactRational(n)), den_(ExactRational(1)) {}
    RationalFunctionQ(ExactRational r) : num_(std::move(r)), den_(ExactRational(1)) {}
    static RationalFunctionQ q();
    static RationalFunctionQ of(QPoly num, QPoly den);
    // Requires gcd(num, den) = 1; skips the reduction and only normalizes.
    static RationalFunctionQ of_reduced(QPoly num, QPoly den);

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return den_.is_constant() && num_ == den_; }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    // Requires is_constant().
    ExactRational as_rational() const;
    const QPoly& num() const { return num_; }
    const QPoly& den() const { return den_; }

    RationalFunctionQ operator-() const;
    friend RationalFunctionQ operator+(const RationalFunctionQ&, const RationalFunctionQ&);
    friend RationalFunctionQ operator-(const RationalFunctionQ&, const RationalFunctionQ&);
    friend RationalFunctionQ operator*(const RationalFunctionQ&, const RationalFunctionQ&);
    friend RationalFunctionQ operator/(const RationalFunctionQ&, const RationalFunctionQ&);
    RationalFunctionQ& operator+=(const RationalFunctionQ& o) { return *this = *this + o; }
    RationalFunctionQ& operator-=(const RationalFunctionQ& o) { return *this = *this - o; }
    RationalFunctionQ& operator*=(const RationalFunctionQ& o) { return *this = *this * o; }
    RationalFunctionQ& operator/=(const RationalFunctionQ& o) { return *this = *this / o; }

    friend bool operator==(const RationalFunctionQ& a, const RationalFunctionQ& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunctionQ& a, const RationalFunctionQ& b) { return !(a == b); }

    RationalFunctionQ inv() const;
    RationalFunctionQ pow(long e) const;

    // Substitute a rational value for q. Rejects values zeroing the denominator.
    RationalFunctionQ specialized(const ExactRational& qval) const;

    std::string str() const;

private:
    QPoly num_, den_;
    RationalFunctionQ(QPoly n, QPoly d, bool reduced);
    static RationalFunctionQ make(QPoly n, QPoly d);
};

using Scalar = RationalFunctionQ;

} // namespace qvertex
