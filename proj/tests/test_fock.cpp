#include "doctest.h"
#include "qvertex/fock.hpp"

using namespace qvertex;

namespace {

FockWord fw(std::initializer_list<int32_t> am, std::initializer_list<int32_t> bm) {
    FockWord w;
    w.am.assign(am);
    w.bm.assign(bm);
    return w;
}

FockE single(const FockWord& w, long c = 1) { return Scalar(c) * FockE::of(w); }

bool same(const FockE& x, const FockE& y) {
    FockE d = x;
    d += -y;
    return d.is_zero();
}

} // namespace

TEST_CASE("annihilation modes kill the vacuum") {
    FockWord vac;
    CHECK(mode_action(Fermion::A, 0, vac).is_zero());
    CHECK(mode_action(Fermion::A, 5, vac).is_zero());
    CHECK(mode_action(Fermion::B, 0, vac).is_zero());
    CHECK(mode_action(Fermion::B, 3, vac).is_zero());
}

TEST_CASE("the pairing delta connects a and b across one mode step") {
    FockWord vac;
    // a_0 b_{-1}|0> = |0>, b_0 a_{-1}|0> = |0>
    CHECK(same(mode_action(Fermion::A, 0, mode_action(Fermion::B, -1, vac)), single(vac)));
    CHECK(same(mode_action(Fermion::B, 0, mode_action(Fermion::A, -1, vac)), single(vac)));
    // a_1 b_{-2}|0> = |0>; one step off gives zero
    CHECK(same(mode_action(Fermion::A, 1, mode_action(Fermion::B, -2, vac)), single(vac)));
    CHECK(mode_action(Fermion::A, 1, mode_action(Fermion::B, -1, vac)).is_zero());
    // crossing the a-block flips the sign: a_1 (a_{-1} b_{-2}|0>) = -a_{-1}|0>
    FockE v = mode_action(Fermion::A, 1, single(fw({1}, {2})));
    CHECK(same(v, single(fw({1}, {}), -1)));
}

TEST_CASE("creation obeys transposition parity and kills repeats") {
    FockWord vac;
    CHECK(same(mode_action(Fermion::A, -2, mode_action(Fermion::A, -1, vac)),
               single(fw({2, 1}, {}))));
    CHECK(same(mode_action(Fermion::A, -1, mode_action(Fermion::A, -2, vac)),
               single(fw({2, 1}, {}), -1)));
    CHECK(same(mode_action(Fermion::A, -1, mode_action(Fermion::B, -1, vac)),
               single(fw({1}, {1}))));
    CHECK(same(mode_action(Fermion::B, -1, mode_action(Fermion::A, -1, vac)),
               single(fw({1}, {1}), -1)));
    CHECK(mode_action(Fermion::A, -1, single(fw({1}, {}))).is_zero());
    CHECK(mode_action(Fermion::B, -2, single(fw({}, {2}))).is_zero());
}

TEST_CASE("anticommutators close on a basis sample") {
    FockBasis basis = FockBasis::up_to(5);
    size_t checked = 0;
    for (const FockWord& w : basis.words)
        for (long m = -3; m <= 2; ++m)
            for (long n = -3; n <= 2; ++n) {
                FockE ww = FockE::of(w);
                // {a_m, a_n} = 0 and {b_m, b_n} = 0
                FockE aa = mode_action(Fermion::A, m, mode_action(Fermion::A, n, ww));
                aa += mode_action(Fermion::A, n, mode_action(Fermion::A, m, ww));
                CHECK(aa.is_zero());
                FockE bb = mode_action(Fermion::B, m, mode_action(Fermion::B, n, ww));
                bb += mode_action(Fermion::B, n, mode_action(Fermion::B, m, ww));
                CHECK(bb.is_zero());
                // {a_m, b_n} = [m + n + 1 == 0]
                FockE ab = mode_action(Fermion::A, m, mode_action(Fermion::B, n, ww));
                ab += mode_action(Fermion::B, n, mode_action(Fermion::A, m, ww));
                FockE want = (m + n + 1 == 0) ? ww : FockE{};
                CHECK(same(ab, want));
                ++checked;
            }
    CHECK(checked == basis.words.size() * 36);
}

TEST_CASE("graded dimensions match the two-colored distinct-part product") {
    FockBasis basis = FockBasis::up_to(8);
    std::vector<long> want{1, 2, 1, 2, 4, 4, 5, 6, 9};
    CHECK(basis.dims() == want);
    CHECK(fermion_graded_dims(8) == want);
}

TEST_CASE("field expansion of a on the vacuum") {
    TensorTVector v = word_vector(FockWord{});
    TensorTVector ax = fermion_field_apply(Fermion::A, v, "x", 4);
    CHECK(ax.tower == VarTower{"x"});
    auto comp = [&](long e) {
        ExpVec ev = ExpVec::zeros(1);
        ev[0] = (int32_t)e;
        const FockE* c = ax.tab.coeff(ev);
        return c ? *c : FockE{};
    };
    CHECK(same(comp(0), single(fw({1}, {}))));
    CHECK(same(comp(1), single(fw({2}, {}))));
    CHECK(same(comp(2), single(fw({3}, {}))));
    CHECK(comp(-1).is_zero());
    CHECK(ax.tab.w[0].khi == 4);
    CHECK(ax.tab.w[0].slo == 0);
}

TEST_CASE("the generator fields anticommute on a window") {
    for (Fermion f : {Fermion::A, Fermion::B})
        for (const FockWord& w : {FockWord{}, fw({1}, {}), fw({1}, {1})}) {
            TensorTVector v = word_vector(w);
            TensorTVector f12 =
                fermion_field_apply(f, fermion_field_apply(f, v, "x2", 4), "x1", 4);
            TensorTVector f21 =
                fermion_field_apply(f, fermion_field_apply(f, v, "x1", 4), "x2", 4);
            AgreeResult r = tensor_agree(f12, permuted_to(f21, f12.tower));
            CHECK_FALSE(r.equal);      // odd fields: the swap negates
            TensorTVector neg{f21.tower, f21.tab.negated()};
            r = tensor_agree(f12, permuted_to(neg, f12.tower));
            CHECK(r.equal);
            CHECK(r.compared > 0);
        }
}

TEST_CASE("the mixed field bracket is the diagonal delta") {
    long prec = 4;
    for (const FockWord& w : {FockWord{}, fw({2}, {}), fw({1}, {1})}) {
        TensorTVector v = word_vector(w);
        TensorTVector ab =
            fermion_field_apply(Fermion::A, fermion_field_apply(Fermion::B, v, "x2", prec),
                                "x1", prec);
        TensorTVector ba =
            fermion_field_apply(Fermion::B, fermion_field_apply(Fermion::A, v, "x1", prec),
                                "x2", prec);
        SeriesTable<FockE> sum = add(ab.tab, permuted_to(ba, ab.tower).tab);
        // every cell on x1 + x2 = -1 carries w itself, everything else cancels
        size_t diag = 0;
        for (auto& [e, c] : sum.terms) {
            REQUIRE(e[0] + e[1] == -1);
            CHECK(same(c, FockE::of(w)));
            ++diag;
        }
        for (long e2 = sum.w[0].klo; e2 < sum.w[0].khi; ++e2)
            if (sum.w[1].knows(-1 - e2)) {
                ExpVec ev = ExpVec::zeros(2);
                ev[0] = (int32_t)e2;
                ev[1] = (int32_t)(-1 - e2);
                CHECK(sum.coeff(ev) != nullptr);
            }
        CHECK(diag > 0);
    }
}

TEST_CASE("phi images of the generators and one depth-two vector") {
    FockWord vac;
    FockWord a1 = fw({1}, {});
    FockWord a2 = fw({2}, {});
    FockWord b1 = fw({}, {1});
    FockWord b2 = fw({}, {2});

    auto comps = [](const TensorTVector& v) { return tensor_poly_view(v); };

    auto pv = phi_map(+1, vac, "t");
    CHECK(comps(pv) == (TensorPolyView{{vac, {{0, Scalar(1)}}}}));

    CHECK(comps(phi_map(+1, a1, "t")) == (TensorPolyView{{a1, {{1, Scalar(1)}}}}));
    CHECK(comps(phi_map(+1, b1, "t")) == (TensorPolyView{{b1, {{-1, Scalar(1)}}}}));
    CHECK(comps(phi_map(-1, a1, "t")) == (TensorPolyView{{a1, {{-1, Scalar(1)}}}}));
    CHECK(comps(phi_map(-1, b1, "t")) == (TensorPolyView{{b1, {{1, Scalar(1)}}}}));

    // the t factor shifts with the expansion variable: modes of a(x)(t-x)
    CHECK(comps(phi_map(+1, a2, "t")) ==
          (TensorPolyView{{a1, {{0, Scalar(-1)}}}, {a2, {{1, Scalar(1)}}}}));
    // the inverse factor (t-x)^{-1} expands with all plus signs
    CHECK(comps(phi_map(-1, a2, "t")) ==
          (TensorPolyView{{a1, {{-2, Scalar(1)}}}, {a2, {{-1, Scalar(1)}}}}));
    // under the minus map b carries the positive power
    CHECK(comps(phi_map(-1, b2, "t")) ==
          (TensorPolyView{{b1, {{0, Scalar(-1)}}}, {b2, {{1, Scalar(1)}}}}));

    // depth two by hand: apply the transported a_{-2} to b tensor t^{-1}
    CHECK(comps(phi_map(+1, fw({2}, {1}), "t")) ==
          (TensorPolyView{{fw({1}, {1}), {{-1, Scalar(-1)}}}, {fw({2}, {1}), {{0, Scalar(1)}}}}));
}

TEST_CASE("truncated series view of a tensor vector") {
    auto pairs = tensor_pairs(phi_map(-1, fw({2}, {}), "t"));
    REQUIRE(pairs.size() == 2);
    CHECK(pairs[0].first == fw({1}, {}));
    CHECK(pairs[0].second.coeff(-2) == Scalar(1));
    CHECK(pairs[0].second.low() == -2);
    CHECK(pairs[1].first == fw({2}, {}));
    CHECK(pairs[1].second.coeff(-1) == Scalar(1));
}

TEST_CASE("phi plus and phi minus invert each other") {
    FockBasis basis = FockBasis::up_to(5);
    for (const FockWord& w : basis.words) {
        TensorTVector v = word_vector(w, VarTower{"t"});
        for (int s : {+1, -1}) {
            TensorTVector round = phi_apply(-s, phi_apply(s, v, "t"), "t");
            auto r = tensor_agree(round, v);
            CHECK(r.equal);
        }
    }
}

TEST_CASE("phi commutes with itself at distinct arguments") {
    FockBasis basis = FockBasis::up_to(4);
    for (const FockWord& w : basis.words)
        for (int s : {+1, -1}) {
            TensorTVector v = word_vector(w);
            TensorTVector lhs = phi_apply(s, phi_apply(s, v, "x2"), "x1");
            TensorTVector rhs = phi_apply(s, phi_apply(s, v, "x1"), "x2");
            auto r = tensor_agree(lhs, permuted_to(rhs, lhs.tower));
            CHECK(r.equal);
        }
}

TEST_CASE("phi intertwines the generator fields after clearing one pole") {
    // phi^s(x1) Y(v, x2) equals the transported field acting after phi^s(x1);
    // the transported generator carries (x1-x2)^{e} with e = +-1, so one
    // polynomial factor clears the comparison either way
    FockBasis basis = FockBasis::up_to(4);
    for (const FockWord& w : basis.words)
        for (int s : {+1, -1})
            for (Fermion f : {Fermion::A, Fermion::B}) {
                TensorTVector v = word_vector(w);
                TensorTVector lhs =
                    phi_apply(s, fermion_field_apply(f, v, "x2", 4), "x1");
                TensorTVector rhs =
                    permuted_to(fermion_field_apply(f, phi_apply(s, v, "x1"), "x2", 4),
                                lhs.tower);
                int e = ((f == Fermion::A) == (s == +1)) ? +1 : -1;
                TensorTVector& cleared = (e == +1) ? rhs : lhs;
                cleared.tab = mul(pair_difference(cleared.tower, "x1", "x2"), cleared.tab);
                auto r = tensor_agree(lhs, rhs);
                CHECK(r.equal);
                CHECK(r.compared > 0);
            }
}

TEST_CASE("phi reports exhaustion when the t window cannot hold the shift") {
    // a_{-1}b_{-1}|0> transports to components at t shifts -1 and 0; a
    // one-wide known window has no exact output exponent left
    SeriesTable<FockE> tab(1);
    tab.w[0] = VarInfo{0, 1, 0, kPosInf};
    FockWord w;
    w.am = {1};
    w.bm = {1};
    tab.terms.emplace(ExpVec::zeros(1), FockE::of(w));
    TensorTVector v{VarTower{"t"}, tab};
    CHECK_THROWS_AS(phi_apply(+1, v, "t"), TPrecisionExhausted);
}

TEST_CASE("the full phi verification suite passes") {
    PhiReport rep = verify_phi(5, 5);
    CHECK(rep.pass);
    CHECK(rep.identities_checked > 50);
    CHECK(rep.first_failure.empty());
}
