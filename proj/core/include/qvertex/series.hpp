#pragma once
#include "qvertex/table.hpp"
#include "qvertex/tseries.hpp"
#include <string>
#include <vector>
#include <optional>

namespace qvertex {

// Ordered list of series variables. The tower [v1, ..., vr] is the nested
// Laurent ring F((v1))...((vr)): a series in vr, the outermost variable,
// whose coefficients live in the sub-tower on [v1, ..., v_{r-1}].
struct VarTower {
    std::vector<std::string> vars;

    VarTower() = default;
    VarTower(std::initializer_list<std::string> names) : vars(names) {}
    explicit VarTower(std::vector<std::string> names) : vars(std::move(names)) {}

    int size() const { return (int)vars.size(); }
    int index(const std::string& name) const;
    bool contains(const std::string& name) const;
    friend bool operator==(const VarTower& a, const VarTower& b) { return a.vars == b.vars; }
    friend bool operator!=(const VarTower& a, const VarTower& b) { return !(a == b); }
    std::string str() const;
};

// Requested materialization windows, one entry per variable. A missing low
// bound means "tracked": the engine derives it from the computation.
struct TruncationProfile {
    struct Entry {
        std::optional<long> low;
        long prec = 8;
    };
    std::map<std::string, Entry> window;

    static TruncationProfile uniform(const VarTower& t, long prec);
    long prec_of(const std::string& v, long fallback = 8) const;
};

// A sparse element of a Laurent tower with exactness windows. This is the
// scalar-coefficient face of the table engine; vector-coefficient series are
// handled by the operator layer with the same tables.
class LaurentTowerSeries {
public:
    LaurentTowerSeries() = default;
    LaurentTowerSeries(VarTower t, SeriesTable<Scalar> tab);

    static LaurentTowerSeries zero(const VarTower& t);
    static LaurentTowerSeries monomial(const VarTower& t, const std::map<std::string, long>& exps,
                                       const Scalar& c);

    const VarTower& tower() const { return tower_; }
    const SeriesTable<Scalar>& table() const { return tab_; }
    SeriesTable<Scalar>& table() { return tab_; }

    Scalar coeff(const std::map<std::string, long>& exps) const;
    bool knows(const std::map<std::string, long>& exps) const;

    friend LaurentTowerSeries operator+(const LaurentTowerSeries& a, const LaurentTowerSeries& b);
    friend LaurentTowerSeries operator-(const LaurentTowerSeries& a, const LaurentTowerSeries& b);
    friend LaurentTowerSeries operator*(const LaurentTowerSeries& a, const LaurentTowerSeries& b);
    LaurentTowerSeries operator-() const { return LaurentTowerSeries(tower_, tab_.negated()); }
    LaurentTowerSeries scaled(const Scalar& s) const { return LaurentTowerSeries(tower_, tab_.scaled(s)); }

    LaurentTowerSeries derivative(const std::string& var) const;
    // Coefficient of var^-1; the variable leaves the tower.
    LaurentTowerSeries residue(const std::string& var) const;
    LaurentTowerSeries sliced(const std::string& var, long at) const;

    // var -> base + sign*offset, expanded in nonnegative powers of offset
    // materialized below `offset_prec`. base/offset join the tower if new;
    // the result tower is `target` (a permutation of the surviving vars).
    LaurentTowerSeries substituted(const std::string& var, const std::string& base,
                                   const std::string& offset, int sign, long offset_prec,
                                   const VarTower& target) const;

    // Caller-supplied structural knowledge: the represented object has no
    // content below `lo` in `var`. Narrows the tracked support claim.
    LaurentTowerSeries asserted_support_low(const std::string& var, long lo) const;

    AgreeResult agrees_with(const LaurentTowerSeries& o) const;

    std::string str() const;
    std::string to_json() const;
    static LaurentTowerSeries from_json(const std::string& text);

private:
    VarTower tower_;
    SeriesTable<Scalar> tab_;
};

// f(t) -> f(t+x): the x-expansion of the shift, exact below the requested
// x precision. Output tower [t, x].
LaurentTowerSeries tseries_shift(const TruncatedTSeries& f, const std::string& tname,
                                 const std::string& xname, long xprec);

// One-variable views.
TruncatedTSeries to_tseries(const LaurentTowerSeries& s);
LaurentTowerSeries from_tseries(const TruncatedTSeries& f, const std::string& tname);

} // namespace qvertex
