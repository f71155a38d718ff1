#pragma once
#include <array>
#include <cstdint>
#include <string>

namespace qvertex {

inline constexpr int kMaxVars = 6;

// Exponent vector for up to kMaxVars series variables. Slots beyond `n` are
// zero and ignored by comparisons.
struct ExpVec {
    uint8_t n = 0;
    std::array<int32_t, kMaxVars> e{};

    static ExpVec zeros(int nvars) {
        ExpVec v;
        v.n = (uint8_t)nvars;
        return v;
    }

    int32_t operator[](int i) const { return e[(size_t)i]; }
    int32_t& operator[](int i) { return e[(size_t)i]; }

    friend bool operator==(const ExpVec& a, const ExpVec& b) {
        if (a.n != b.n) return false;
        for (int i = 0; i < a.n; ++i)
            if (a.e[(size_t)i] != b.e[(size_t)i]) return false;
        return true;
    }
    friend bool operator<(const ExpVec& a, const ExpVec& b) {
        for (int i = 0; i < a.n && i < b.n; ++i) {
            if (a.e[(size_t)i] != b.e[(size_t)i]) return a.e[(size_t)i] < b.e[(size_t)i];
        }
        return a.n < b.n;
    }

    std::string str() const {
        std::string s = "(";
        for (int i = 0; i < n; ++i) {
            if (i) s += ",";
            s += std::to_string(e[(size_t)i]);
        }
        return s + ")";
    }
};

} // namespace qvertex
