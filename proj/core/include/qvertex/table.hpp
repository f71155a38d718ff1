#pragma once
#include "qvertex/exponents.hpp"
#include "qvertex/scalar.hpp"
#include "qvertex/errors.hpp"
#include <map>
#include <vector>
#include <algorithm>
#include <optional>

namespace qvertex {

inline constexpr long kNegInf = -(1L << 40);
inline constexpr long kPosInf = (1L << 40);

inline long addc(long a, long b) {
    if (a <= kNegInf || b <= kNegInf) return kNegInf;
    if (a >= kPosInf || b >= kPosInf) return kPosInf;
    long s = a + b;
    if (s <= kNegInf) return kNegInf;
    if (s >= kPosInf) return kPosInf;
    return s;
}

// Per-variable knowledge and support bookkeeping for a series table.
//   known region [klo, khi): coefficients with this exponent are exact;
//   support [slo, shi] (inclusive): the true object has no content outside.
// Every stored term lies inside both. Infinite ends use the kNegInf/kPosInf
// sentinels; empty support is slo > shi.
struct VarInfo {
    long klo = kNegInf;
    long khi = kPosInf;
    long slo = kPosInf;
    long shi = kNegInf;

    static VarInfo exact_empty() { return VarInfo{}; }
    static VarInfo exact_at(long e) { return VarInfo{kNegInf, kPosInf, e, e}; }
    static VarInfo lower_truncated(long slo, long prec) { return VarInfo{kNegInf, prec, slo, kPosInf}; }
    static VarInfo window(long lo, long hi) { return VarInfo{lo, hi, kNegInf, kPosInf}; }

    bool supp_empty() const { return slo > shi; }
    bool known_empty() const { return klo >= khi; }
    bool knows(long e) const { return e >= klo && e < khi; }
    bool may_contain(long e) const { return e >= slo && e <= shi; }
    bool is_exact() const { return klo <= kNegInf && khi >= kPosInf; }
};

struct Interval {
    long lo, hi; // inclusive; empty when lo > hi
    bool empty() const { return lo > hi; }
};

namespace detail {

// Unknown-content intervals of X below and above its known region. An
// infinite known end leaves no room for unknown cells on that side.
inline Interval unknown_low(const VarInfo& x) {
    if (x.klo <= kNegInf) return Interval{0, -1};
    return Interval{x.slo, std::min(x.shi, x.klo - 1)};
}
inline Interval unknown_high(const VarInfo& x) {
    if (x.khi >= kPosInf) return Interval{0, -1};
    return Interval{std::max(x.slo, x.khi), x.shi};
}

} // namespace detail

// Knowledge/support propagation through a product in one variable. A result
// cell is polluted once unknown content of one factor can pair with possible
// content of the other; every such pairing sits at or above the product's
// leading exponent, so the good region is always a downward-closed window.
inline VarInfo mul_var_info(const VarInfo& a, const VarInfo& b) {
    VarInfo r;
    r.slo = addc(a.slo, b.slo);
    r.shi = addc(a.shi, b.shi);
    if (a.supp_empty() || b.supp_empty()) { // product is the zero object
        return VarInfo::exact_empty();
    }
    long khi = kPosInf;
    auto clip = [&](const Interval& u, const Interval& s) {
        if (u.empty() || s.empty()) return;
        khi = std::min(khi, addc(u.lo, s.lo));
    };
    Interval sa{a.slo, a.shi}, sb{b.slo, b.shi};
    clip(detail::unknown_low(a), sb);
    clip(detail::unknown_high(a), sb);
    clip(detail::unknown_low(b), sa);
    clip(detail::unknown_high(b), sa);
    r.klo = kNegInf;
    r.khi = khi;
    return r;
}

// Sparse multivariate series with per-variable windows. The coefficient type
// C needs: default construction to zero, is_zero(), +=, unary -, and
// Scalar * C.
template <class C>
class SeriesTable {
public:
    int nv = 0;
    std::map<ExpVec, C> terms;
    std::vector<VarInfo> w;

    SeriesTable() = default;
    explicit SeriesTable(int nvars) : nv(nvars), w((size_t)nvars) {}

    static SeriesTable zero(int nvars) {
        SeriesTable t(nvars);
        for (auto& v : t.w) v = VarInfo::exact_empty();
        return t;
    }

    static SeriesTable monomial(int nvars, const ExpVec& e, C c) {
        SeriesTable t = zero(nvars);
        if (c.is_zero()) return t;
        for (int i = 0; i < nvars; ++i) t.w[(size_t)i] = VarInfo::exact_at(e[i]);
        t.terms.emplace(e, std::move(c));
        return t;
    }

    bool known_box_empty() const {
        for (auto& v : w)
            if (v.known_empty()) return true;
        return false;
    }

    bool in_known_box(const ExpVec& e) const {
        for (int i = 0; i < nv; ++i)
            if (!w[(size_t)i].knows(e[i])) return false;
        return true;
    }

    bool in_supp_box(const ExpVec& e) const {
        for (int i = 0; i < nv; ++i)
            if (!w[(size_t)i].may_contain(e[i])) return false;
        return true;
    }

    const C* coeff(const ExpVec& e) const {
        auto it = terms.find(e);
        return it == terms.end() ? nullptr : &it->second;
    }

    // Accumulate into an exact table under construction; widens support.
    void poly_insert(const ExpVec& e, C c) {
        if (c.is_zero()) return;
        for (int i = 0; i < nv; ++i) {
            VarInfo& v = w[(size_t)i];
            if (!v.is_exact()) throw QvError("poly_insert on non-exact table");
            v.slo = std::min(v.slo, (long)e[i]);
            v.shi = std::max(v.shi, (long)e[i]);
        }
        auto [it, fresh] = terms.try_emplace(e, std::move(c));
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    // Accumulate respecting the already-fixed known box (drops outside).
    void accumulate(const ExpVec& e, C c) {
        if (c.is_zero() || !in_known_box(e)) return;
        auto [it, fresh] = terms.try_emplace(e, std::move(c));
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    SeriesTable negated() const {
        SeriesTable r(*this);
        for (auto& [e, c] : r.terms) c = -c;
        return r;
    }

    SeriesTable scaled(const Scalar& s) const {
        SeriesTable r(nv);
        r.w = w;
        if (s.is_zero()) {
            for (auto& v : r.w) { v.slo = kPosInf; v.shi = kNegInf; }
            return r;
        }
        for (auto& [e, c] : terms) {
            C v = s * c;
            if (!v.is_zero()) r.terms.emplace(e, std::move(v));
        }
        return r;
    }

    SeriesTable shifted(int var, long d) const {
        SeriesTable r(nv);
        r.w = w;
        VarInfo& v = r.w[(size_t)var];
        v.klo = addc(v.klo, d);
        v.khi = addc(v.khi, d);
        v.slo = addc(v.slo, d);
        v.shi = addc(v.shi, d);
        for (auto& [e, c] : terms) {
            ExpVec e2 = e;
            e2[var] += (int32_t)d;
            r.terms.emplace(e2, c);
        }
        return r;
    }

    SeriesTable derivative(int var) const {
        SeriesTable r(nv);
        r.w = w;
        VarInfo& v = r.w[(size_t)var];
        v.klo = addc(v.klo, -1);
        v.khi = addc(v.khi, -1);
        v.slo = addc(v.slo, -1);
        v.shi = addc(v.shi, -1);
        for (auto& [e, c] : terms) {
            if (e[var] == 0) continue;
            ExpVec e2 = e;
            e2[var] -= 1;
            C val = Scalar(e[var]) * c;
            if (!val.is_zero()) r.terms.emplace(e2, std::move(val));
        }
        return r;
    }

    // Coefficient extraction in one variable; the variable slot is removed.
    SeriesTable sliced(int var, long at) const {
        if (!w[(size_t)var].knows(at))
            throw WindowTooSmall("slice at exponent outside known window");
        SeriesTable r(nv - 1);
        for (int i = 0, j = 0; i < nv; ++i)
            if (i != var) r.w[(size_t)j++] = w[(size_t)i];
        for (auto& [e, c] : terms) {
            if (e[var] != at) continue;
            ExpVec e2 = ExpVec::zeros(nv - 1);
            for (int i = 0, j = 0; i < nv; ++i)
                if (i != var) e2[j++] = e[i];
            r.terms.emplace(e2, c);
        }
        return r;
    }

    // Appends a fresh variable (exponent zero everywhere, exact).
    SeriesTable with_appended_var() const {
        if (nv + 1 > kMaxVars) throw QvError("variable arity limit exceeded");
        SeriesTable r(nv + 1);
        for (int i = 0; i < nv; ++i) r.w[(size_t)i] = w[(size_t)i];
        r.w[(size_t)nv] = VarInfo::exact_at(0);
        for (auto& [e, c] : terms) {
            ExpVec e2 = e;
            e2.n = (uint8_t)(nv + 1);
            r.terms.emplace(e2, c);
        }
        return r;
    }

    // Removes a variable whose exponent is zero on every term.
    SeriesTable dropped_var(int var) const {
        for (auto& [e, c] : terms)
            if (e[var] != 0) throw QvError("dropping a live variable");
        SeriesTable r = sliced(var, 0);
        // sliced() checked 0 is in the known window; support must also be trivial-safe
        return r;
    }

    // perm[i] = position in *this feeding position i of the result.
    SeriesTable permuted(const std::vector<int>& perm) const {
        SeriesTable r((int)perm.size());
        for (size_t i = 0; i < perm.size(); ++i) r.w[i] = w[(size_t)perm[i]];
        for (auto& [e, c] : terms) {
            ExpVec e2 = ExpVec::zeros((int)perm.size());
            for (size_t i = 0; i < perm.size(); ++i) e2[(int)i] = e[perm[i]];
            r.terms.emplace(e2, c);
        }
        return r;
    }

    void restrict_known(int var, long lo, long hi) {
        VarInfo& v = w[(size_t)var];
        v.klo = std::max(v.klo, lo);
        v.khi = std::min(v.khi, hi);
        for (auto it = terms.begin(); it != terms.end();)
            if (!v.knows((*it).first[var])) it = terms.erase(it);
            else ++it;
    }

    void prune_zeros() {
        for (auto it = terms.begin(); it != terms.end();)
            if (it->second.is_zero()) it = terms.erase(it);
            else ++it;
    }
};

template <class C>
SeriesTable<C> add(const SeriesTable<C>& a, const SeriesTable<C>& b) {
    if (a.nv != b.nv) throw TowerMismatch("adding tables of different arity");
    SeriesTable<C> r(a.nv);
    for (int i = 0; i < a.nv; ++i) {
        const VarInfo &va = a.w[(size_t)i], &vb = b.w[(size_t)i];
        VarInfo v;
        v.klo = std::max(va.klo, vb.klo);
        v.khi = std::min(va.khi, vb.khi);
        v.slo = std::min(va.slo, vb.slo);
        v.shi = std::max(va.shi, vb.shi);
        r.w[(size_t)i] = v;
    }
    for (auto& [e, c] : a.terms) r.accumulate(e, c);
    for (auto& [e, c] : b.terms) r.accumulate(e, c);
    return r;
}

template <class C>
SeriesTable<C> sub(const SeriesTable<C>& a, const SeriesTable<C>& b) {
    return add(a, b.negated());
}

// Product of a scalar series and a C-valued series (C = Scalar included).
template <class C>
SeriesTable<C> mul(const SeriesTable<Scalar>& a, const SeriesTable<C>& b) {
    if (a.nv != b.nv) throw TowerMismatch("multiplying tables of different arity");
    SeriesTable<C> r(a.nv);
    bool zero = false;
    for (int i = 0; i < a.nv; ++i) {
        r.w[(size_t)i] = mul_var_info(a.w[(size_t)i], b.w[(size_t)i]);
        if (r.w[(size_t)i].supp_empty()) zero = true;
    }
    if (zero) return SeriesTable<C>::zero(a.nv);
    if (r.known_box_empty()) return r;
    for (auto& [ea, ca] : a.terms)
        for (auto& [eb, cb] : b.terms) {
            ExpVec e = ea;
            bool in = true;
            for (int i = 0; i < a.nv; ++i) {
                e[i] += eb[i];
                if (!r.w[(size_t)i].knows(e[i])) { in = false; break; }
            }
            if (!in) continue;
            r.accumulate(e, ca * cb);
        }
    return r;
}

struct AgreeResult {
    bool equal = true;
    size_t compared = 0;
    ExpVec first_mismatch{};
    bool box_empty = false;
};

// Coefficient-wise comparison on the intersection of known boxes.
template <class C>
AgreeResult agree(const SeriesTable<C>& a, const SeriesTable<C>& b) {
    if (a.nv != b.nv) throw TowerMismatch("comparing tables of different arity");
    AgreeResult res;
    std::vector<VarInfo> box((size_t)a.nv);
    for (int i = 0; i < a.nv; ++i) {
        box[(size_t)i].klo = std::max(a.w[(size_t)i].klo, b.w[(size_t)i].klo);
        box[(size_t)i].khi = std::min(a.w[(size_t)i].khi, b.w[(size_t)i].khi);
        if (box[(size_t)i].known_empty()) {
            res.box_empty = true;
            return res;
        }
    }
    auto inside = [&](const ExpVec& e) {
        for (int i = 0; i < a.nv; ++i)
            if (!box[(size_t)i].knows(e[i])) return false;
        return true;
    };
    for (auto& [e, c] : a.terms) {
        if (!inside(e)) continue;
        ++res.compared;
        const C* o = b.coeff(e);
        C diff = c;
        if (o) diff += -(*o);
        if (!diff.is_zero()) {
            res.equal = false;
            res.first_mismatch = e;
            return res;
        }
    }
    for (auto& [e, c] : b.terms) {
        if (!inside(e) || a.coeff(e)) continue;
        ++res.compared;
        if (!c.is_zero()) {
            res.equal = false;
            res.first_mismatch = e;
            return res;
        }
    }
    return res;
}

// Substitution  x_s -> x_u + sign * x_w  expanded in nonnegative powers of
// x_w, materialized for x_w exponents in [0, wcap). The s slot of every
// output term is zero; callers usually follow with dropped_var(s).
// Throws IllegalSubstitution when a target coefficient would be an infinite
// sum (unbounded matching content on both sides).
template <class C>
SeriesTable<C> substitute_sum(const SeriesTable<C>& a, int s, int u, int wv, int sign, long wcap) {
    if (s == u || s == wv || u == wv) throw QvError("substitute_sum needs distinct slots");
    const VarInfo &S = a.w[(size_t)s], &U = a.w[(size_t)u], &W = a.w[(size_t)wv];
    if ((S.slo <= kNegInf && U.shi >= kPosInf) || (S.shi >= kPosInf && U.slo <= kNegInf))
        throw IllegalSubstitution("substitution pairs unbounded content in both directions");
    if (W.slo <= kNegInf && !(S.slo >= 0 && S.shi < kPosInf))
        throw IllegalSubstitution("substitution offset variable unbounded below");

    SeriesTable<C> r(a.nv);
    // base-variable cap: a term needs every contribution (m, k) with
    // m - k = beta - Uexp, k < wcap - e[wv]. The consumed side must reach
    // m <= beta - U.slo + wcap - 1 - W.slo; the base side must reach
    // Uexp <= beta - (m - k), and m - k >= 0 once the consumed support
    // starts at zero, so the base then keeps its own cap.
    long cap = kPosInf;
    if (S.khi < kPosInf) cap = std::min(cap, addc(addc(S.khi, addc(U.slo, W.slo)), 1 - wcap));
    if (U.khi < kPosInf)
        cap = std::min(cap, S.slo >= 0 ? U.khi
                                       : addc(addc(U.khi, addc(S.slo, W.slo)), 1 - wcap));

    for (int i = 0; i < a.nv; ++i) {
        if (i == s) { r.w[(size_t)i] = VarInfo::exact_at(0); continue; }
        if (i == u) {
            VarInfo v;
            v.slo = S.slo >= 0 ? addc(U.slo, 0) : kNegInf;
            v.shi = S.shi < kPosInf ? addc(U.shi, std::max(S.shi, 0L)) : kPosInf;
            v.klo = kNegInf;
            v.khi = cap;
            r.w[(size_t)i] = v;
            continue;
        }
        if (i == wv) {
            VarInfo v;
            v.slo = W.slo;
            v.shi = S.slo >= 0 && S.shi < kPosInf && W.shi > kNegInf ? addc(W.shi, S.shi) : kPosInf;
            v.klo = kNegInf;
            v.khi = std::min(wcap, W.khi);
            r.w[(size_t)i] = v;
            continue;
        }
        r.w[(size_t)i] = a.w[(size_t)i];
    }
    if (r.known_box_empty()) return r;

    for (auto& [e, c] : a.terms) {
        long m = e[s];
        long kcap = wcap - 1 - e[wv];
        if (m >= 0) kcap = std::min(kcap, m);
        for (long k = 0; k <= kcap; ++k) {
            Scalar coef(binomial(m, k));
            if (sign < 0 && (k & 1)) coef = -coef;
            if (coef.is_zero()) continue;
            ExpVec e2 = e;
            e2[s] = 0;
            e2[u] += (int32_t)(m - k);
            e2[wv] += (int32_t)k;
            r.accumulate(e2, coef * c);
        }
    }
    return r;
}

} // namespace qvertex
