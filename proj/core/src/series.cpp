#include "qvertex/series.hpp"
#include "qvertex/parser.hpp"
#include "json.hpp"
#include <sstream>

namespace qvertex {

int VarTower::index(const std::string& name) const {
    for (size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == name) return (int)i;
    throw TowerMismatch("variable '" + name + "' not in tower " + str());
}

bool VarTower::contains(const std::string& name) const {
    for (auto& v : vars)
        if (v == name) return true;
    return false;
}

std::string VarTower::str() const {
    std::string s = "[";
    for (size_t i = 0; i < vars.size(); ++i) {
        if (i) s += ",";
        s += vars[i];
    }
    return s + "]";
}

TruncationProfile TruncationProfile::uniform(const VarTower& t, long prec) {
    TruncationProfile p;
    for (auto& v : t.vars) p.window[v] = Entry{std::nullopt, prec};
    return p;
}

long TruncationProfile::prec_of(const std::string& v, long fallback) const {
    auto it = window.find(v);
    return it == window.end() ? fallback : it->second.prec;
}

LaurentTowerSeries::LaurentTowerSeries(VarTower t, SeriesTable<Scalar> tab)
    : tower_(std::move(t)), tab_(std::move(tab)) {
    if ((int)tower_.vars.size() != tab_.nv)
        throw TowerMismatch("tower/table arity mismatch");
}

LaurentTowerSeries LaurentTowerSeries::zero(const VarTower& t) {
    return LaurentTowerSeries(t, SeriesTable<Scalar>::zero((int)t.vars.size()));
}

namespace {
ExpVec exps_of(const VarTower& t, const std::map<std::string, long>& exps) {
    ExpVec e = ExpVec::zeros((int)t.vars.size());
    for (auto& [name, v] : exps) e[t.index(name)] = (int32_t)v;
    return e;
}
} // namespace

LaurentTowerSeries LaurentTowerSeries::monomial(const VarTower& t,
                                                const std::map<std::string, long>& exps,
                                                const Scalar& c) {
    return LaurentTowerSeries(
        t, SeriesTable<Scalar>::monomial((int)t.vars.size(), exps_of(t, exps), c));
}

Scalar LaurentTowerSeries::coeff(const std::map<std::string, long>& exps) const {
    const Scalar* c = tab_.coeff(exps_of(tower_, exps));
    return c ? *c : Scalar();
}

bool LaurentTowerSeries::knows(const std::map<std::string, long>& exps) const {
    return tab_.in_known_box(exps_of(tower_, exps));
}

LaurentTowerSeries operator+(const LaurentTowerSeries& a, const LaurentTowerSeries& b) {
    if (a.tower_ != b.tower_)
        throw TowerMismatch("adding " + a.tower_.str() + " and " + b.tower_.str());
    return LaurentTowerSeries(a.tower_, add(a.tab_, b.tab_));
}

LaurentTowerSeries operator-(const LaurentTowerSeries& a, const LaurentTowerSeries& b) {
    if (a.tower_ != b.tower_)
        throw TowerMismatch("subtracting " + a.tower_.str() + " and " + b.tower_.str());
    return LaurentTowerSeries(a.tower_, sub(a.tab_, b.tab_));
}

LaurentTowerSeries operator*(const LaurentTowerSeries& a, const LaurentTowerSeries& b) {
    if (a.tower_ != b.tower_)
        throw TowerMismatch("multiplying " + a.tower_.str() + " and " + b.tower_.str());
    return LaurentTowerSeries(a.tower_, mul(a.tab_, b.tab_));
}

LaurentTowerSeries LaurentTowerSeries::derivative(const std::string& var) const {
    return LaurentTowerSeries(tower_, tab_.derivative(tower_.index(var)));
}

LaurentTowerSeries LaurentTowerSeries::residue(const std::string& var) const {
    int i = tower_.index(var);
    VarTower rest;
    for (auto& v : tower_.vars)
        if (v != var) rest.vars.push_back(v);
    if (!tab_.w[(size_t)i].may_contain(-1))
        return LaurentTowerSeries::zero(rest);
    return LaurentTowerSeries(rest, tab_.sliced(i, -1));
}

LaurentTowerSeries LaurentTowerSeries::sliced(const std::string& var, long at) const {
    int i = tower_.index(var);
    VarTower rest;
    for (auto& v : tower_.vars)
        if (v != var) rest.vars.push_back(v);
    return LaurentTowerSeries(rest, tab_.sliced(i, at));
}

LaurentTowerSeries LaurentTowerSeries::substituted(const std::string& var,
                                                   const std::string& base,
                                                   const std::string& offset, int sign,
                                                   long offset_prec,
                                                   const VarTower& target) const {
    if (base == offset) throw TowerMismatch("substitution base equals offset");
    int s = tower_.index(var);
    SeriesTable<Scalar> work = tab_;
    std::vector<std::string> names = tower_.vars;
    // base/offset get fresh slots when absent; a slot named like the consumed
    // variable is always fresh since the old one is dropped
    auto slot_of = [&](const std::string& nm) {
        if (nm != var)
            for (size_t i = 0; i < names.size(); ++i)
                if (names[i] == nm) return (int)i;
        work = work.with_appended_var();
        names.push_back(nm);
        return (int)names.size() - 1;
    };
    int u = slot_of(base);
    int wv = slot_of(offset);
    work = substitute_sum(work, s, u, wv, sign, offset_prec).dropped_var(s);
    names.erase(names.begin() + s);
    if ((int)target.vars.size() != (int)names.size())
        throw TowerMismatch("substitution target " + target.str() + " does not cover surviving variables");
    std::vector<int> perm;
    for (auto& nm : target.vars) {
        int found = -1;
        for (size_t i = 0; i < names.size(); ++i)
            if (names[i] == nm) found = (int)i;
        if (found < 0)
            throw TowerMismatch("substitution target names unknown variable '" + nm + "'");
        perm.push_back(found);
    }
    return LaurentTowerSeries(target, work.permuted(perm));
}

LaurentTowerSeries LaurentTowerSeries::asserted_support_low(const std::string& var, long lo) const {
    LaurentTowerSeries r = *this;
    VarInfo& v = r.tab_.w[(size_t)tower_.index(var)];
    v.slo = std::max(v.slo, lo);
    return r;
}

AgreeResult LaurentTowerSeries::agrees_with(const LaurentTowerSeries& o) const {
    if (tower_ != o.tower_)
        throw TowerMismatch("comparing " + tower_.str() + " and " + o.tower_.str());
    return agree(tab_, o.tab_);
}

namespace {

std::string bound_str(long v) {
    if (v <= kNegInf) return "-inf";
    if (v >= kPosInf) return "inf";
    return std::to_string(v);
}

std::string term_str(const VarTower& t, const ExpVec& e, const Scalar& c) {
    std::string mono;
    for (int i = 0; i < (int)t.vars.size(); ++i) {
        if (e[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += t.vars[(size_t)i];
        if (e[i] != 1) mono += "^" + std::to_string(e[i]);
    }
    std::string cs = c.str();
    bool atomic = cs.find_first_of("+-", 1) == std::string::npos && cs[0] != '-';
    if (mono.empty()) return cs;
    if (c.is_one()) return mono;
    return (atomic ? cs : "(" + cs + ")") + "*" + mono;
}

} // namespace

std::string LaurentTowerSeries::str() const {
    std::ostringstream out;
    if (tab_.terms.empty()) out << "0";
    bool first = true;
    for (auto& [e, c] : tab_.terms) {
        if (!first) out << " + ";
        first = false;
        out << term_str(tower_, e, c);
    }
    for (int i = 0; i < tab_.nv; ++i) {
        const VarInfo& v = tab_.w[(size_t)i];
        if (v.is_exact()) continue;
        out << (i == 0 ? "  | " : " ");
        out << tower_.vars[(size_t)i] << ":[" << bound_str(v.klo) << "," << bound_str(v.khi) << ")";
    }
    return out.str();
}

std::string LaurentTowerSeries::to_json() const {
    nlohmann::json j;
    j["tower"] = tower_.vars;
    nlohmann::json wins = nlohmann::json::array();
    for (auto& v : tab_.w) {
        nlohmann::json w;
        w["klo"] = v.klo <= kNegInf ? nlohmann::json() : nlohmann::json(v.klo);
        w["khi"] = v.khi >= kPosInf ? nlohmann::json() : nlohmann::json(v.khi);
        w["slo"] = v.slo <= kNegInf ? nlohmann::json() : nlohmann::json(v.slo);
        w["shi"] = v.shi >= kPosInf ? nlohmann::json() : nlohmann::json(v.shi);
        // empty support uses the swapped sentinels and round-trips as such
        if (v.slo >= kPosInf) w["slo"] = "empty";
        if (v.shi <= kNegInf) w["shi"] = "empty";
        wins.push_back(w);
    }
    j["windows"] = wins;
    nlohmann::json terms = nlohmann::json::array();
    for (auto& [e, c] : tab_.terms) {
        nlohmann::json t;
        std::vector<long> ev;
        for (int i = 0; i < tab_.nv; ++i) ev.push_back(e[i]);
        t["e"] = ev;
        t["c"] = c.str();
        terms.push_back(t);
    }
    j["terms"] = terms;
    return j.dump();
}

namespace {

LaurentTowerSeries decode_series_json(const nlohmann::json& j) {
    VarTower t(j.at("tower").get<std::vector<std::string>>());
    int nv = (int)t.vars.size();
    if (nv > kMaxVars) throw ParseError("too many variables in series JSON");
    SeriesTable<Scalar> tab(nv);
    auto& wins = j.at("windows");
    if ((int)wins.size() != nv) throw ParseError("window/tower arity mismatch in series JSON");
    for (int i = 0; i < nv; ++i) {
        auto& w = wins[(size_t)i];
        VarInfo v;
        auto bound = [&](const char* key, long sentinel, long empty_val) {
            auto& b = w.at(key);
            if (b.is_null()) return sentinel;
            if (b.is_string()) return empty_val;
            return b.get<long>();
        };
        v.klo = bound("klo", kNegInf, kNegInf);
        v.khi = bound("khi", kPosInf, kPosInf);
        v.slo = bound("slo", kNegInf, kPosInf);
        v.shi = bound("shi", kPosInf, kNegInf);
        tab.w[(size_t)i] = v;
    }
    for (auto& term : j.at("terms")) {
        auto ev = term.at("e").get<std::vector<long>>();
        if ((int)ev.size() != nv) throw ParseError("term arity mismatch in series JSON");
        ExpVec e = ExpVec::zeros(nv);
        for (int i = 0; i < nv; ++i) e[i] = (int32_t)ev[(size_t)i];
        Scalar c = parse_scalar(term.at("c").get<std::string>());
        if (!tab.in_known_box(e) || !tab.in_supp_box(e))
            throw ParseError("series JSON term outside declared windows");
        auto [it, fresh] = tab.terms.emplace(e, std::move(c));
        if (!fresh) throw ParseError("duplicate term in series JSON");
    }
    return LaurentTowerSeries(std::move(t), std::move(tab));
}

} // namespace

LaurentTowerSeries LaurentTowerSeries::from_json(const std::string& text) {
    try {
        return decode_series_json(nlohmann::json::parse(text));
    } catch (const QvError&) {
        throw;
    } catch (const std::exception& ex) {
        throw ParseError(std::string("bad series JSON: ") + ex.what());
    }
}

LaurentTowerSeries tseries_shift(const TruncatedTSeries& f, const std::string& tname,
                                 const std::string& xname, long xprec) {
    LaurentTowerSeries g = from_tseries(f, "#shift");
    return g.substituted("#shift", tname, xname, +1, xprec, VarTower{tname, xname});
}

TruncatedTSeries to_tseries(const LaurentTowerSeries& s) {
    if (s.tower().size() != 1) throw TowerMismatch("one-variable view of " + s.tower().str());
    const SeriesTable<Scalar>& tab = s.table();
    const VarInfo& v = tab.w[0];
    long low = std::max(v.klo, v.slo);
    long prec = v.khi;
    if (low <= kNegInf || prec >= kPosInf)
        throw WindowTooSmall("series window unbounded in one-variable view");
    TruncatedTSeries r(low, prec);
    for (auto& [e, c] : tab.terms) r.set(e[0], c);
    return r;
}

LaurentTowerSeries from_tseries(const TruncatedTSeries& f, const std::string& tname) {
    SeriesTable<Scalar> tab(1);
    tab.w[0] = VarInfo::lower_truncated(f.effective_low(), f.prec());
    for (auto& [e, c] : f.terms()) {
        ExpVec ev = ExpVec::zeros(1);
        ev[0] = (int32_t)e;
        tab.terms.emplace(ev, c);
    }
    return LaurentTowerSeries(VarTower{tname}, std::move(tab));
}

} // namespace qvertex
