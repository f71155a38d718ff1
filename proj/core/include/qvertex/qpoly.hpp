#pragma once
#include "qvertex/rational.hpp"
#include <vector>
#include <utility>

namespace qvertex {

// Dense univariate polynomial in q over the rationals. No trailing zero
// coefficients; the zero polynomial has an empty coefficient vector.
class QPoly {
public:
    QPoly() = default;
    QPoly(ExactRational c);
    explicit QPoly(std::vector<ExactRational> coeffs);
    static QPoly variable();

    long degree() const { return (long)c_.size() - 1; } // -1 for zero
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    ExactRational coeff(long i) const;
    const ExactRational& leading() const;

    QPoly operator-() const;
    friend QPoly operator+(const QPoly& a, const QPoly& b);
    friend QPoly operator-(const QPoly& a, const QPoly& b);
    friend QPoly operator*(const QPoly& a, const QPoly& b);
    friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const QPoly& a, const QPoly& b) { return !(a == b); }

    // Field-coefficient division: returns (quotient, remainder), deg r < deg b.
    static std::pair<QPoly, QPoly> divrem(const QPoly& a, const QPoly& b);
    // Monic gcd; gcd(0,0) = 0.
    static QPoly gcd(QPoly a, QPoly b);

    QPoly scaled(const ExactRational& s) const;
    QPoly pow(long e) const; // e >= 0
    ExactRational eval(const ExactRational& x) const;

    std::string str() const;

private:
    std::vector<ExactRational> c_;
    void trim();
};

} // namespace qvertex
