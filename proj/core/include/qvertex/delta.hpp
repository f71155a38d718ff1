#pragma once
#include "qvertex/series.hpp"
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

// Finite-window calculus for the two-variable delta diagonal and its divided
// derivatives. A distribution with bi-infinite support has no lower-truncated
// representation, so these objects only ever exist as coefficient tables on
// finite exponent boxes; a cell outside the box is unknown, not zero.

namespace qvertex {

// Inclusive exponent box in an ordered variable pair. Empty when a bound
// pair crosses.
struct PairBox {
    long lo1 = 0, hi1 = -1;
    long lo2 = 0, hi2 = -1;

    static PairBox square(long lo, long hi) { return PairBox{lo, hi, lo, hi}; }
    bool empty() const { return lo1 > hi1 || lo2 > hi2; }
    bool contains(long a, long b) const { return a >= lo1 && a <= hi1 && b >= lo2 && b <= hi2; }
    PairBox meet(const PairBox& o) const {
        return PairBox{std::max(lo1, o.lo1), std::min(hi1, o.hi1), std::max(lo2, o.lo2),
                       std::min(hi2, o.hi2)};
    }
    friend bool operator==(const PairBox& a, const PairBox& b) {
        return a.lo1 == b.lo1 && a.hi1 == b.hi1 && a.lo2 == b.lo2 && a.hi2 == b.hi2;
    }
};

// One monomial c * v1^e1 * v2^e2 of a Laurent polynomial in the pair.
struct PairMono {
    long e1 = 0;
    long e2 = 0;
    Scalar c;
};

// (v1 - v2)^n as a monomial list, n >= 0.
std::vector<PairMono> diff_power(long n);

// Coefficient table of a two-variable distribution, exact on `box`. The
// coefficient type C needs: default construction to zero, is_zero(), +=,
// unary minus, and Scalar * C.
template <class C>
class WindowedPair {
public:
    WindowedPair() = default;
    explicit WindowedPair(PairBox b) : box_(b) {}

    const PairBox& box() const { return box_; }
    const std::map<std::pair<long, long>, C>& cells() const { return cells_; }
    size_t cell_count() const { return cells_.size(); }
    bool knows(long a, long b) const { return box_.contains(a, b); }

    const C* cell(long a, long b) const {
        auto it = cells_.find({a, b});
        return it == cells_.end() ? nullptr : &it->second;
    }

    C at(long a, long b) const {
        if (!knows(a, b)) throw WindowTooSmall("cell outside the trustworthy window");
        const C* p = cell(a, b);
        return p ? *p : C{};
    }

    void set(long a, long b, C c) {
        if (!knows(a, b)) throw QvError("writing a cell outside the window");
        if (c.is_zero()) {
            cells_.erase({a, b});
            return;
        }
        cells_.insert_or_assign({a, b}, std::move(c));
    }

    WindowedPair restricted(const PairBox& b) const {
        WindowedPair r(box_.meet(b));
        for (auto& [k, c] : cells_)
            if (r.box_.contains(k.first, k.second)) r.cells_.emplace(k, c);
        return r;
    }

    WindowedPair negated() const {
        WindowedPair r(*this);
        for (auto& [k, c] : r.cells_) c = -c;
        return r;
    }

    WindowedPair scaled(const Scalar& s) const {
        WindowedPair r(box_);
        if (s.is_zero()) return r;
        for (auto& [k, c] : cells_) {
            C v = s * c;
            if (!v.is_zero()) r.cells_.emplace(k, std::move(v));
        }
        return r;
    }

    friend WindowedPair operator+(const WindowedPair& x, const WindowedPair& y) {
        WindowedPair r(x.box_.meet(y.box_));
        for (auto& [k, c] : x.cells_)
            if (r.box_.contains(k.first, k.second)) r.add_cell(k, c);
        for (auto& [k, c] : y.cells_)
            if (r.box_.contains(k.first, k.second)) r.add_cell(k, c);
        return r;
    }

    friend WindowedPair operator-(const WindowedPair& x, const WindowedPair& y) {
        return x + y.negated();
    }

    // Product with a Laurent polynomial. A result cell needs every shifted
    // source cell, so the exact box shrinks by the multiplier's exponent
    // spread. An identically zero multiplier yields an empty window.
    WindowedPair mul_poly(const std::vector<PairMono>& p) const {
        long alo = kPosInf, ahi = kNegInf, blo = kPosInf, bhi = kNegInf;
        for (auto& m : p) {
            if (m.c.is_zero()) continue;
            alo = std::min(alo, m.e1);
            ahi = std::max(ahi, m.e1);
            blo = std::min(blo, m.e2);
            bhi = std::max(bhi, m.e2);
        }
        if (alo > ahi) return WindowedPair{};
        WindowedPair r(PairBox{addc(box_.lo1, ahi), addc(box_.hi1, alo), addc(box_.lo2, bhi),
                               addc(box_.hi2, blo)});
        if (r.box_.empty()) return r;
        for (auto& [k, c] : cells_)
            for (auto& m : p) {
                if (m.c.is_zero()) continue;
                long a = k.first + m.e1, b = k.second + m.e2;
                if (r.box_.contains(a, b)) r.add_cell({a, b}, m.c * c);
            }
        return r;
    }

    // d/dv2; the top v2 row leaves the window.
    WindowedPair dv2() const {
        WindowedPair r(PairBox{box_.lo1, box_.hi1, addc(box_.lo2, -1), addc(box_.hi2, -1)});
        for (auto& [k, c] : cells_) {
            if (k.second == 0) continue;
            C v = Scalar(k.second) * c;
            if (!v.is_zero()) r.cells_.emplace(std::make_pair(k.first, k.second - 1), std::move(v));
        }
        return r;
    }

private:
    void add_cell(std::pair<long, long> k, const C& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = cells_.try_emplace(k, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) cells_.erase(it);
        }
    }

    PairBox box_;
    std::map<std::pair<long, long>, C> cells_;
};

// Cell-by-cell comparison on the meet of the two boxes.
template <class C>
AgreeResult windowed_agree(const WindowedPair<C>& x, const WindowedPair<C>& y) {
    AgreeResult res;
    PairBox m = x.box().meet(y.box());
    if (m.empty()) {
        res.box_empty = true;
        return res;
    }
    auto mark = [](long a, long b) {
        ExpVec e = ExpVec::zeros(2);
        e[0] = (int32_t)a;
        e[1] = (int32_t)b;
        return e;
    };
    for (auto& [k, c] : x.cells()) {
        if (!m.contains(k.first, k.second)) continue;
        ++res.compared;
        C d = c;
        if (const C* o = y.cell(k.first, k.second)) {
            C t = -*o;
            d += t;
        }
        if (!d.is_zero()) {
            res.equal = false;
            res.first_mismatch = mark(k.first, k.second);
            return res;
        }
    }
    for (auto& [k, c] : y.cells()) {
        if (!m.contains(k.first, k.second) || x.cell(k.first, k.second)) continue;
        ++res.compared;
        if (!c.is_zero()) {
            res.equal = false;
            res.first_mismatch = mark(k.first, k.second);
            return res;
        }
    }
    return res;
}

// The j-th divided v2-derivative of the delta diagonal on `box`: the cell
// (-m-j-1, m) holds C(m+j, j), everything off that diagonal is zero.
WindowedPair<Scalar> delta_window(long j, const PairBox& box);

// Coefficients of a one-variable series, exact for exponents in [lo, hi].
template <class C>
struct BandSlice {
    long lo = 0, hi = -1; // inclusive; lo > hi means nothing is known
    std::map<long, C> terms;

    bool knows(long k) const { return k >= lo && k <= hi; }
    C at(long k) const {
        if (!knows(k)) throw WindowTooSmall("band coefficient outside the known range");
        auto it = terms.find(k);
        return it == terms.end() ? C{} : it->second;
    }
};

// Res_v1 of (v1 - v2)^m * T as a v2-series. The residue reads the cells with
// first exponent in [-1-m, -1]; when the box misses them the result knows
// nothing.
template <class C>
BandSlice<C> residue_band(const WindowedPair<C>& T, long m) {
    if (m < 0) throw QvError("residue clearing power must be nonnegative");
    BandSlice<C> r;
    const PairBox& B = T.box();
    if (B.empty() || B.lo1 > -1 - m || B.hi1 < -1) return r;
    if (B.lo2 <= kNegInf || B.hi2 >= kPosInf)
        throw QvError("residue extraction needs a finite window");
    r.lo = addc(B.lo2, m);
    r.hi = B.hi2;
    for (long k = r.lo; k <= r.hi; ++k) {
        C acc{};
        for (long i = 0; i <= m; ++i) {
            Scalar c(binomial(m, i));
            if ((m - i) & 1) c = -c;
            acc += c * T.at(-1 - i, k - m + i);
        }
        if (!acc.is_zero()) r.terms.emplace(k, std::move(acc));
    }
    return r;
}

// Outcome of matching a cleared two-sided product against a sum of delta
// derivative terms. `bands` maps the derivative order j to the v2-series
// sitting in front of the j-th delta table.
template <class C>
struct ThreeTermResult {
    bool pass = false;
    size_t compared = 0;
    std::vector<std::pair<long, BandSlice<C>>> bands;
};

namespace detail {

// Compares L against sum_j bands_j(v2) * delta_j(v1, v2) + regular, cell by
// cell on the part of L's box where every band coefficient is known. The
// reconstruction of the cell (a, b) needs the band-j coefficient at
// a + b + j + 1 with weight C(-a-1, j).
template <class C>
ThreeTermResult<C> match_bands(const WindowedPair<C>& L,
                               std::vector<std::pair<long, BandSlice<C>>> bands,
                               const WindowedPair<C>* regular) {
    const PairBox& box = L.box();
    if (box.lo1 <= kNegInf || box.hi1 >= kPosInf || box.lo2 <= kNegInf || box.hi2 >= kPosInf)
        throw QvError("three-term matching needs a finite window");
    long dlo = kNegInf, dhi = kPosInf;
    for (auto& [j, band] : bands) {
        dlo = std::max(dlo, addc(band.lo, -j - 1));
        dhi = std::min(dhi, addc(band.hi, -j - 1));
    }
    ThreeTermResult<C> r;
    for (long a = box.lo1; a <= box.hi1; ++a)
        for (long b = box.lo2; b <= box.hi2; ++b) {
            if (a + b < dlo || a + b > dhi) continue;
            if (regular && !regular->knows(a, b)) continue;
            C want{};
            for (auto& [j, band] : bands) {
                Scalar coef(binomial(-a - 1, j));
                if (coef.is_zero()) continue;
                want += coef * band.at(a + b + j + 1);
            }
            if (regular) {
                if (const C* rc = regular->cell(a, b)) want += *rc;
            }
            C diff = L.at(a, b);
            want = -want;
            diff += want;
            ++r.compared;
            if (!diff.is_zero())
                throw MatchFailure("three-term mismatch at exponents (" + std::to_string(a) +
                                       ", " + std::to_string(b) + ")",
                                   a, b);
        }
    if (r.compared == 0) throw WindowTooSmall("three-term comparison window is empty");
    r.pass = true;
    r.bands = std::move(bands);
    return r;
}

} // namespace detail

// Checks (v1 - v2)^n * (A - B) against the given singular bands plus a
// regular tail (null means identically zero). Raises MatchFailure at the
// first offending cell.
template <class C>
ThreeTermResult<C> three_term_check(const WindowedPair<C>& A, const WindowedPair<C>& B, long n,
                                    const std::vector<std::pair<long, BandSlice<C>>>& bands,
                                    const WindowedPair<C>* regular) {
    if (n < 0) throw QvError("clearing exponent must be nonnegative");
    auto L = (A - B).mul_poly(diff_power(n));
    return detail::match_bands(L, bands, regular);
}

// Reads the bands j = 0..max_j off the residues of (v1 - v2)^n * (A - B) and
// verifies the difference is exactly their delta expansion; leftover content
// raises MatchFailure. Identically zero bands are dropped from the result.
template <class C>
ThreeTermResult<C> three_term_extract(const WindowedPair<C>& A, const WindowedPair<C>& B, long n,
                                      long max_j) {
    if (n < 0) throw QvError("clearing exponent must be nonnegative");
    if (max_j < 0) throw QvError("band count must be nonnegative");
    auto L = (A - B).mul_poly(diff_power(n));
    std::vector<std::pair<long, BandSlice<C>>> bands;
    for (long j = 0; j <= max_j; ++j) bands.emplace_back(j, residue_band(L, j));
    auto r = detail::match_bands(L, std::move(bands), (const WindowedPair<C>*)nullptr);
    std::erase_if(r.bands, [](auto& p) { return p.second.terms.empty(); });
    return r;
}

// A finite sum sum_j c_j(v2) * delta_j(v1, v2) plus a regular tail. The c_j
// live over the single-variable tower [v2]; the tail, when present, over the
// pair.
struct DeltaExpression {
    struct Term {
        long j = 0;
        LaurentTowerSeries c;
    };
    std::vector<Term> singular;
    std::optional<LaurentTowerSeries> regular;
    std::string v1, v2;

    void validate() const;
};

// One-variable series as a band slice; the known range comes from the
// series' own window.
BandSlice<Scalar> band_from_series(const LaurentTowerSeries& s);

// Known cells of a two-variable series inside `clip`.
WindowedPair<Scalar> windowed_from_series(const LaurentTowerSeries& s, const std::string& v1,
                                          const std::string& v2, const PairBox& clip);

// Extracted bands repackaged as a delta expression over the named pair.
DeltaExpression to_delta_expression(const ThreeTermResult<Scalar>& r, std::string v1,
                                    std::string v2);

// Candidate mode when `candidate` is present, extraction mode otherwise.
ThreeTermResult<Scalar> three_term_match(const WindowedPair<Scalar>& A,
                                         const WindowedPair<Scalar>& B, long n,
                                         const std::optional<DeltaExpression>& candidate,
                                         long max_j);

} // namespace qvertex
