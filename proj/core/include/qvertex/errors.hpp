#pragma once
#include <stdexcept>
#include <string>

namespace qvertex {

// Base for all exactness/domain violations raised by the library.
// Anything not derived from QvError escaping a public entry point is a bug.
struct QvError : std::runtime_error {
    explicit QvError(const std::string& what) : std::runtime_error(what) {}
};

struct DivisionByZero : QvError {
    using QvError::QvError;
};

// Inverting a t-series whose window shows no leading nonzero coefficient.
struct ZeroLeadingWindow : QvError {
    using QvError::QvError;
};

// Arithmetic between series over different variable towers.
struct TowerMismatch : QvError {
    using QvError::QvError;
};

// A substitution whose target coefficient would be an infinite sum.
struct IllegalSubstitution : QvError {
    using QvError::QvError;
};

// Residual content left after matching singular terms of an operator identity.
// A located failure records the first offending cell and its anti-diagonal.
struct MatchFailure : QvError {
    using QvError::QvError;
    MatchFailure(const std::string& what, long a, long b)
        : QvError(what), e1(a), e2(b), band(a + b), located(true) {}
    long e1 = 0, e2 = 0, band = 0;
    bool located = false;
};

struct ZeroDenominator : QvError {
    using QvError::QvError;
};

// A t-window too narrow to hold the exact content of a shifted vector.
struct TPrecisionExhausted : QvError {
    using QvError::QvError;
};

// A requested check has an empty trustworthy exponent region.
struct WindowTooSmall : QvError {
    using QvError::QvError;
};

// Two compatibility witnesses produced different products on the shared window.
struct WitnessDisagreement : QvError {
    using QvError::QvError;
};

struct CertificateFailure : QvError {
    using QvError::QvError;
};

// Normal-order rewriting failed to terminate within the configured depth.
struct RewriteDivergence : QvError {
    using QvError::QvError;
};

struct ParseError : QvError {
    using QvError::QvError;
};

struct ConfigError : QvError {
    using QvError::QvError;
};

} // namespace qvertex
