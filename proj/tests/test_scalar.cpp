#include "doctest.h"
#include "qvertex/scalar.hpp"
#include "qvertex/tseries.hpp"
#include "qvertex/errors.hpp"
#include <random>

using namespace qvertex;

namespace {

std::mt19937 rng(20240811);

ExactRational rand_rational() {
    std::uniform_int_distribution<long> num(-20, 20), den(1, 12);
    return ExactRational(num(rng), den(rng));
}

QPoly rand_poly(int maxdeg) {
    std::uniform_int_distribution<int> deg(0, maxdeg);
    int d = deg(rng);
    std::vector<ExactRational> c;
    for (int i = 0; i <= d; ++i) c.push_back(rand_rational());
    return QPoly(std::move(c));
}

Scalar rand_scalar() {
    QPoly den = rand_poly(2);
    while (den.is_zero()) den = rand_poly(2);
    return Scalar::of(rand_poly(3), den);
}

} // namespace

TEST_CASE("rational arithmetic basics") {
    ExactRational a(3, 4), b(-6, 8);
    CHECK(a.str() == "3/4");
    CHECK(b.str() == "-3/4");
    CHECK((a + b).is_zero());
    CHECK((a / b).str() == "-1");
    CHECK(ExactRational::parse("3/4") == a);
    CHECK(ExactRational::parse("-12").str() == "-12");
    CHECK_THROWS_AS(ExactRational::parse("1.5"), ParseError);
    CHECK_THROWS_AS(a / ExactRational(0), DivisionByZero);
    CHECK(ExactRational(2).pow(-3) == ExactRational(1, 8));
}

TEST_CASE("generalized binomial coefficients") {
    CHECK(binomial(4, 1) == ExactRational(4));
    CHECK(binomial(5, 2) == ExactRational(10));
    CHECK(binomial(3, 5).is_zero());
    // negative upper index: (-1 over k) = (-1)^k
    CHECK(binomial(-1, 3) == ExactRational(-1));
    CHECK(binomial(-2, 2) == ExactRational(3));
    CHECK(binomial(-1, 0).is_one());
}

TEST_CASE("field axioms hold on random triples over Q") {
    for (int i = 0; i < 100; ++i) {
        ExactRational a = rand_rational(), b = rand_rational(), c = rand_rational();
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        if (!c.is_zero()) CHECK((a / c) * c == a);
    }
}

TEST_CASE("field axioms hold on random triples over Q(q)") {
    for (int i = 0; i < 100; ++i) {
        Scalar a = rand_scalar(), b = rand_scalar(), c = rand_scalar();
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        if (!c.is_zero()) CHECK((a / c) * c == a);
        CHECK(a - a == Scalar());
        CHECK(a * Scalar(1) == a);
    }
}

TEST_CASE("rational function reduction against long division") {
    Scalar q = Scalar::q();
    // (q^2-1)/(q-1): long division gives quotient q+1, remainder 0
    QPoly num = QPoly::variable() * QPoly::variable() - QPoly(ExactRational(1));
    QPoly den = QPoly::variable() - QPoly(ExactRational(1));
    auto [quot, rem] = QPoly::divrem(num, den);
    CHECK(rem.is_zero());
    CHECK(Scalar::of(num, den) == Scalar::of(quot, QPoly(ExactRational(1))));
    CHECK(Scalar::of(num, den) == q + Scalar(1));

    // denominator stays monic and coprime after arithmetic
    Scalar f = (q * q - Scalar(1)) / (q + Scalar(1));
    CHECK(f == q - Scalar(1));
    CHECK(f.str() == "q-1");
}

TEST_CASE("scalar printing shapes") {
    Scalar q = Scalar::q();
    CHECK(Scalar(ExactRational(3, 4)).str() == "3/4");
    Scalar f = (q * q - Scalar(1)) / (q * q - q); // = (q+1)/q
    CHECK(f.str() == "(q+1)/(q)");
    CHECK(Scalar::of(QPoly(ExactRational(3)), QPoly::variable() + QPoly(ExactRational(1))).str() ==
          "3/(q+1)");
}

TEST_CASE("specialization substitutes q exactly") {
    Scalar q = Scalar::q();
    Scalar f = (q * q - Scalar(1)) / (q + Scalar(1));
    CHECK(f.specialized(ExactRational(2)) == Scalar(1));
    Scalar g = Scalar(1) / (q - Scalar(1));
    CHECK_THROWS_AS(g.specialized(ExactRational(1)), ZeroDenominator);
}

TEST_CASE("t-series inversion is geometric") {
    // (1 - t)^-1 = sum t^n, all coefficients 1 up to the window
    TruncatedTSeries f(0, 8);
    f.set(0, Scalar(1));
    f.set(1, Scalar(-1));
    TruncatedTSeries g = f.inverted();
    CHECK(g.low() == 0);
    CHECK(g.prec() == 8);
    for (long e = 0; e < 8; ++e) CHECK(g.coeff(e) == Scalar(1));
    CHECK((f * g).coeff(0) == Scalar(1));
    for (long e = 1; e < 8; ++e) CHECK((f * g).coeff(e).is_zero());
}

TEST_CASE("t-series inversion round-trips") {
    std::uniform_int_distribution<long> elo(-3, 2);
    for (int trial = 0; trial < 20; ++trial) {
        long lo = elo(rng);
        TruncatedTSeries f(lo, lo + 7);
        for (long e = lo; e < lo + 7; ++e) f.set(e, Scalar(rand_rational()));
        if (f.known_zero()) continue;
        TruncatedTSeries back = f.inverted().inverted();
        CHECK(back.agrees_with(f));
        CHECK(back.low() == f.effective_low());
        CHECK(back.prec() == f.prec()); // relative precision preserved both ways
        CHECK((f.inverted() * f).coeff(0) == Scalar(1));
    }
}

TEST_CASE("t-series with empty window refuses inversion") {
    TruncatedTSeries z = TruncatedTSeries::zero(5);
    CHECK_THROWS_AS(z.inverted(), ZeroLeadingWindow);
}

TEST_CASE("t-series precision propagates through products") {
    TruncatedTSeries a(-1, 5); // known on [-1,5)
    a.set(-1, Scalar(1));
    a.set(3, Scalar(2));
    TruncatedTSeries b(2, 9); // known on [2,9)
    b.set(2, Scalar(1));
    TruncatedTSeries p = a * b;
    CHECK(p.low() == 1);
    CHECK(p.prec() == 7); // min(5+2, 9-1)
    CHECK(p.coeff(1) == Scalar(1));
    CHECK(p.coeff(5) == Scalar(2));
}

TEST_CASE("t-series printing") {
    TruncatedTSeries f(-1, 5);
    f.set(-1, Scalar(1));
    f.set(0, Scalar(2));
    CHECK(f.str() == "t^-1 + 2*t^0 + O(t^5)");
}
