#include "doctest.h"
#include "qvertex/series.hpp"

#include <random>

using namespace qvertex;

TEST_CASE("tower bookkeeping") {
    VarTower t{"t", "x0"};
    CHECK(t.size() == 2);
    CHECK(t.index("x0") == 1);
    CHECK(t.contains("t"));
    CHECK(!t.contains("x1"));
    CHECK(t.str() == "[t,x0]");
    CHECK_THROWS_AS((void)t.index("zz"), TowerMismatch);
}

TEST_CASE("monomials, coefficients and window queries") {
    VarTower t{"a", "b"};
    auto m = LaurentTowerSeries::monomial(t, {{"a", 2}, {"b", -1}}, Scalar(3));
    CHECK(m.coeff({{"a", 2}, {"b", -1}}) == Scalar(3));
    CHECK(m.coeff({{"a", 0}, {"b", 0}}).is_zero());
    CHECK(m.knows({{"a", 5}, {"b", 7}}));

    auto z = LaurentTowerSeries::zero(t);
    CHECK(z.knows({{"a", -100}, {"b", 100}}));
    CHECK((m + z).coeff({{"a", 2}, {"b", -1}}) == Scalar(3));
}

TEST_CASE("tower arithmetic rejects mismatched towers") {
    auto a = LaurentTowerSeries::zero(VarTower{"x"});
    auto b = LaurentTowerSeries::zero(VarTower{"y"});
    CHECK_THROWS_AS(a + b, TowerMismatch);
    CHECK_THROWS_AS(a * b, TowerMismatch);
}

TEST_CASE("derivative and residue") {
    VarTower t{"x", "y"};
    // x^-1*y + 2*x^3
    auto s = LaurentTowerSeries::monomial(t, {{"x", -1}, {"y", 1}}, Scalar(1)) +
             LaurentTowerSeries::monomial(t, {{"x", 3}}, Scalar(2));
    auto d = s.derivative("x");
    CHECK(d.coeff({{"x", -2}, {"y", 1}}) == Scalar(-1));
    CHECK(d.coeff({{"x", 2}, {"y", 0}}) == Scalar(6));

    auto r = s.residue("x");
    CHECK(r.tower() == VarTower{"y"});
    CHECK(r.coeff({{"y", 1}}) == Scalar(1));

    // no x^-1 content possible: residue is exactly zero
    auto m = LaurentTowerSeries::monomial(t, {{"x", 2}}, Scalar(5));
    CHECK(m.residue("x").coeff({{"y", 0}}).is_zero());
}

TEST_CASE("slicing outside the known window throws") {
    SeriesTable<Scalar> tab(1);
    tab.w[0] = VarInfo::lower_truncated(0, 4);
    LaurentTowerSeries s(VarTower{"x"}, tab);
    CHECK_THROWS_AS(s.sliced("x", 7), WindowTooSmall);
}

TEST_CASE("shift of t^-1 into two variables") {
    TruncatedTSeries f(-1, 8);
    f.set(-1, Scalar(1));
    auto g = tseries_shift(f, "t", "x", 5);
    CHECK(g.tower() == (VarTower{"t", "x"}));
    for (long k = 0; k < 5; ++k) {
        Scalar want((k % 2 == 0) ? 1 : -1);
        CHECK(g.coeff({{"t", -1 - k}, {"x", k}}) == want);
    }
    CHECK(g.knows({{"t", -3}, {"x", 2}}));
    CHECK(!g.knows({{"t", 0}, {"x", 6}}));
}

TEST_CASE("shift matches the binomial expansion coefficientwise") {
    // coefficient of t^a x^k in f(t+x) is C(a+k, k) * f_{a+k}
    std::mt19937 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        TruncatedTSeries f(-2, 5), g(-1, 6);
        for (long e = -2; e < 5; ++e) f.set(e, Scalar((long)(rng() % 9) - 4));
        for (long e = -1; e < 6; ++e) g.set(e, Scalar((long)(rng() % 9) - 4));
        TruncatedTSeries h = f * g;
        auto s = tseries_shift(h, "t", "x", 4);
        size_t checked = 0;
        for (long a = -6; a < 6; ++a)
            for (long k = 0; k < 4; ++k) {
                if (!s.knows({{"t", a}, {"x", k}})) continue;
                Scalar want;
                if (a + k >= h.low() && a + k < h.prec())
                    want = Scalar(binomial(a + k, k)) * h.coeff(a + k);
                CHECK(s.coeff({{"t", a}, {"x", k}}) == want);
                ++checked;
            }
        CHECK(checked > 20);
    }
}

TEST_CASE("substitution with an existing base variable") {
    // x^2 in tower [x,y] substituted x -> y + x0
    VarTower t{"x", "y"};
    auto s = LaurentTowerSeries::monomial(t, {{"x", 2}}, Scalar(1));
    auto r = s.substituted("x", "y", "x0", +1, 6, VarTower{"y", "x0"});
    CHECK(r.coeff({{"y", 2}, {"x0", 0}}) == Scalar(1));
    CHECK(r.coeff({{"y", 1}, {"x0", 1}}) == Scalar(2));
    CHECK(r.coeff({{"y", 0}, {"x0", 2}}) == Scalar(1));
    CHECK(r.coeff({{"y", 2}, {"x0", 1}}).is_zero());
}

TEST_CASE("substitution with a negative sign") {
    VarTower t{"x"};
    auto s = LaurentTowerSeries::monomial(t, {{"x", 3}}, Scalar(1));
    auto r = s.substituted("x", "u", "w", -1, 8, VarTower{"u", "w"});
    CHECK(r.coeff({{"u", 3}, {"w", 0}}) == Scalar(1));
    CHECK(r.coeff({{"u", 2}, {"w", 1}}) == Scalar(-3));
    CHECK(r.coeff({{"u", 1}, {"w", 2}}) == Scalar(3));
    CHECK(r.coeff({{"u", 0}, {"w", 3}}) == Scalar(-1));
}

TEST_CASE("one-variable views round trip") {
    TruncatedTSeries f(-2, 6);
    f.set(-2, Scalar(5));
    f.set(3, Scalar::q());
    auto s = from_tseries(f, "t");
    auto back = to_tseries(s);
    CHECK(back.coeff(-2) == Scalar(5));
    CHECK(back.coeff(3) == Scalar::q());
    CHECK(back.prec() == 6);
}

TEST_CASE("JSON round trip is exact") {
    VarTower t{"t", "x"};
    SeriesTable<Scalar> tab(2);
    tab.w[0] = VarInfo::lower_truncated(-1, 7);
    tab.w[1] = VarInfo::window(0, 5);
    ExpVec e = ExpVec::zeros(2);
    e[0] = -1;
    e[1] = 2;
    tab.terms.emplace(e, Scalar::of(QPoly({ExactRational(1), ExactRational(1)}), QPoly(ExactRational(2))));
    ExpVec e2 = ExpVec::zeros(2);
    e2[0] = 4;
    tab.terms.emplace(e2, Scalar(ExactRational::parse("-3/7")));
    LaurentTowerSeries s(t, tab);

    auto s2 = LaurentTowerSeries::from_json(s.to_json());
    CHECK(s2.to_json() == s.to_json());
    CHECK(s2.tower() == s.tower());
    auto r = s2.agrees_with(s);
    CHECK(r.equal);
    for (int i = 0; i < 2; ++i) {
        CHECK(s2.table().w[(size_t)i].klo == s.table().w[(size_t)i].klo);
        CHECK(s2.table().w[(size_t)i].khi == s.table().w[(size_t)i].khi);
        CHECK(s2.table().w[(size_t)i].slo == s.table().w[(size_t)i].slo);
        CHECK(s2.table().w[(size_t)i].shi == s.table().w[(size_t)i].shi);
    }
}

TEST_CASE("JSON rejects malformed input") {
    CHECK_THROWS_AS(LaurentTowerSeries::from_json("{"), ParseError);
    CHECK_THROWS_AS(LaurentTowerSeries::from_json("{\"tower\":[\"x\"]}"), ParseError);
}

TEST_CASE("support assertion narrows the claim") {
    SeriesTable<Scalar> tab(1);
    tab.w[0] = VarInfo{kNegInf, 5, kNegInf, kPosInf};
    LaurentTowerSeries s(VarTower{"x"}, tab);
    auto r = s.asserted_support_low("x", 0);
    CHECK(r.table().w[0].slo == 0);
    CHECK(r.table().w[0].khi == 5);
}
