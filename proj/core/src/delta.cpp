#include "qvertex/delta.hpp"

namespace qvertex {

std::vector<PairMono> diff_power(long n) {
    if (n < 0) throw QvError("difference power must be nonnegative");
    std::vector<PairMono> p;
    p.reserve((size_t)n + 1);
    for (long i = 0; i <= n; ++i) {
        Scalar c(binomial(n, i));
        if ((n - i) & 1) c = -c;
        p.push_back(PairMono{i, n - i, std::move(c)});
    }
    return p;
}

WindowedPair<Scalar> delta_window(long j, const PairBox& box) {
    if (j < 0) throw QvError("delta derivative order must be nonnegative");
    WindowedPair<Scalar> r(box);
    if (box.empty()) return r;
    if (box.lo2 <= kNegInf || box.hi2 >= kPosInf)
        throw QvError("delta materialization needs a finite window");
    for (long b = box.lo2; b <= box.hi2; ++b) {
        long a = -b - j - 1;
        if (a < box.lo1 || a > box.hi1) continue;
        ExactRational c = binomial(b + j, j);
        if (!c.is_zero()) r.set(a, b, Scalar(c));
    }
    return r;
}

void DeltaExpression::validate() const {
    if (v1.empty() || v2.empty() || v1 == v2)
        throw QvError("delta expression needs a distinct variable pair");
    std::vector<long> seen;
    for (auto& term : singular) {
        if (term.j < 0) throw QvError("delta derivative order must be nonnegative");
        for (long s : seen)
            if (s == term.j) throw QvError("duplicate delta derivative order");
        seen.push_back(term.j);
        if (term.c.tower() != VarTower{v2})
            throw TowerMismatch("singular coefficient must live over the second variable");
    }
    if (regular) {
        const VarTower& t = regular->tower();
        if (t.size() != 2 || !t.contains(v1) || !t.contains(v2))
            throw TowerMismatch("regular tail must live over the variable pair");
    }
}

BandSlice<Scalar> band_from_series(const LaurentTowerSeries& s) {
    if (s.tower().size() != 1)
        throw TowerMismatch("band slice needs a one-variable series");
    const VarInfo& v = s.table().w[0];
    BandSlice<Scalar> b;
    b.lo = v.klo <= kNegInf ? kNegInf : v.klo;
    b.hi = v.khi >= kPosInf ? kPosInf : v.khi - 1;
    for (auto& [e, c] : s.table().terms) b.terms.emplace((long)e[0], c);
    return b;
}

WindowedPair<Scalar> windowed_from_series(const LaurentTowerSeries& s, const std::string& v1,
                                          const std::string& v2, const PairBox& clip) {
    const VarTower& t = s.tower();
    if (t.size() != 2 || !t.contains(v1) || !t.contains(v2) || v1 == v2)
        throw TowerMismatch("windowed view needs the two named variables");
    int i1 = t.index(v1), i2 = t.index(v2);
    auto known = [](const VarInfo& v) {
        return std::pair<long, long>{v.klo <= kNegInf ? kNegInf : v.klo,
                                     v.khi >= kPosInf ? kPosInf : v.khi - 1};
    };
    auto [l1, h1] = known(s.table().w[(size_t)i1]);
    auto [l2, h2] = known(s.table().w[(size_t)i2]);
    WindowedPair<Scalar> r(PairBox{l1, h1, l2, h2}.meet(clip));
    for (auto& [e, c] : s.table().terms)
        if (r.box().contains(e[i1], e[i2])) r.set(e[i1], e[i2], c);
    return r;
}

DeltaExpression to_delta_expression(const ThreeTermResult<Scalar>& r, std::string v1,
                                    std::string v2) {
    DeltaExpression d;
    d.v1 = std::move(v1);
    d.v2 = std::move(v2);
    for (auto& [j, band] : r.bands) {
        SeriesTable<Scalar> tab(1);
        tab.w[0] = VarInfo{band.lo, addc(band.hi, 1), kNegInf, kPosInf};
        for (auto& [k, c] : band.terms) {
            ExpVec e = ExpVec::zeros(1);
            e[0] = (int32_t)k;
            tab.terms.emplace(e, c);
        }
        d.singular.push_back(DeltaExpression::Term{j, LaurentTowerSeries(VarTower{d.v2}, tab)});
    }
    return d;
}

ThreeTermResult<Scalar> three_term_match(const WindowedPair<Scalar>& A,
                                         const WindowedPair<Scalar>& B, long n,
                                         const std::optional<DeltaExpression>& candidate,
                                         long max_j) {
    if (!candidate) return three_term_extract(A, B, n, max_j);
    candidate->validate();
    std::vector<std::pair<long, BandSlice<Scalar>>> bands;
    for (auto& term : candidate->singular) bands.emplace_back(term.j, band_from_series(term.c));
    std::optional<WindowedPair<Scalar>> reg;
    if (candidate->regular)
        reg = windowed_from_series(*candidate->regular, candidate->v1, candidate->v2,
                                   PairBox{kNegInf, kPosInf, kNegInf, kPosInf});
    return three_term_check(A, B, n, bands, reg ? &*reg : nullptr);
}

} // namespace qvertex
