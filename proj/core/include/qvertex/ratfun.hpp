#pragma once
#include "qvertex/series.hpp"

namespace qvertex {

// num/den over a fixed ordered variable list; both are exact Laurent
// polynomial tables and den is nonzero. Equality is decided by
// cross-multiplication, so no normal form is maintained.
class RationalElement {
public:
    std::vector<std::string> vars;
    SeriesTable<Scalar> num, den;

    RationalElement() = default;
    RationalElement(std::vector<std::string> vs, SeriesTable<Scalar> n, SeriesTable<Scalar> d);

    static RationalElement constant(std::vector<std::string> vs, const Scalar& c);
    static RationalElement variable(std::vector<std::string> vs, const std::string& name);

    bool is_zero() const { return num.terms.empty(); }

    friend RationalElement operator+(const RationalElement& a, const RationalElement& b);
    friend RationalElement operator-(const RationalElement& a, const RationalElement& b);
    friend RationalElement operator*(const RationalElement& a, const RationalElement& b);
    friend RationalElement operator/(const RationalElement& a, const RationalElement& b);
    RationalElement operator-() const;
    RationalElement pow(long e) const;
    RationalElement inverse() const;

    bool equals(const RationalElement& o) const;

    std::string str() const;
};

// Exact full substitution x_s -> x_u + sign*x_w for polynomial tables whose
// s content is in nonnegative powers; the result is complete (exact).
SeriesTable<Scalar> poly_shift_exact(const SeriesTable<Scalar>& a, int s, int u, int wv, int sign);

// Evaluate an exact Laurent-polynomial table at rational-element arguments
// (one per table variable).
RationalElement poly_compose(const SeriesTable<Scalar>& tab,
                             const std::vector<RationalElement>& args);

// Expansion of 1/den in the tower given by `order` (positions into the
// table's variables, outermost last). Windows per variable come from prec.
SeriesTable<Scalar> invert_in_tower(const SeriesTable<Scalar>& den, const std::vector<int>& order,
                                    const std::vector<long>& prec);

// iota expansion of f into the tower `order` (a permutation of f.vars plus
// possibly unused vars). Throws ZeroDenominator on a zero denominator.
LaurentTowerSeries iota_expand(const RationalElement& f, const VarTower& order,
                               const TruncationProfile& profile);

// f(y1, y2) -> f(t + y1, t + y2) with t fresh: the standard shift that
// precedes tower expansion.
RationalElement shift_t(const RationalElement& f, const std::string& tname);

// (x_i - x_j)-adic order of an exact polynomial table.
int diagonal_order(const SeriesTable<Scalar>& p, int i, int j);
// Exact division by (x_i - x_j); nullopt when not divisible.
std::optional<SeriesTable<Scalar>> divide_diagonal(const SeriesTable<Scalar>& p, int i, int j);

struct LemmaCheck {
    std::string name;
    bool pass = true;
    size_t compared = 0;
    std::string detail;
};

// Shift/expansion interchange identities on random rational functions:
// expansion-after-substitution against direct expansion, order independence
// of the doubly shifted inverse for diagonally nonvanishing denominators,
// and the minimal clearing exponent against the diagonal-adic order.
std::vector<LemmaCheck> verify_shift_expansion_identities(int samples, long prec, unsigned seed);

// g(x)^{sign} = Taylor expansion at 0 of ((q^a)x - 1)/(x - q^a) raised to sign.
LaurentTowerSeries gij_expand(long a, int sign, long prec, const std::string& xname = "x");

// Scalar two-parameter exchange-coefficient checks for the quantum affine
// fragment: constant terms, g * g^-1 = 1, and the cleared exchange
// identities with a central symbol treated formally.
std::vector<LemmaCheck> affine_gij_checks(long prec);

} // namespace qvertex
