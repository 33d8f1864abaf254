#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

namespace sis {

// Value carried as log|x| plus a sign in {-1, 0, +1}.  sign == 0 means the
// value is exactly zero and log_abs is -inf.
struct SignedLog {
    double log_abs = -std::numeric_limits<double>::infinity();
    int sign = 0;

    static SignedLog from_value(double x) {
        if (x == 0.0) return {};
        return {std::log(std::abs(x)), x > 0.0 ? 1 : -1};
    }
    double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
    SignedLog operator*(const SignedLog& o) const {
        if (sign == 0 || o.sign == 0) return {};
        return {log_abs + o.log_abs, sign * o.sign};
    }
    SignedLog operator/(const SignedLog& o) const {
        return {log_abs - o.log_abs, sign * o.sign};
    }
};

// Complex value in log-polar form: x = exp(log_mod) * exp(i*phase).
// Multiplication is addition; huge dynamic ranges stay exact in the phase.
struct LogComplex {
    double log_mod = -std::numeric_limits<double>::infinity();
    double phase = 0.0;

    static LogComplex from_value(std::complex<double> v) {
        if (v == std::complex<double>(0.0, 0.0)) return {};
        return {std::log(std::abs(v)), std::arg(v)};
    }
    static LogComplex from_polar(double log_mod, double phase) {
        return {log_mod, phase};
    }
    bool is_zero() const { return !std::isfinite(log_mod) && log_mod < 0; }
    std::complex<double> value() const {
        if (is_zero()) return {0.0, 0.0};
        return std::polar(std::exp(log_mod), phase);
    }
    LogComplex operator*(const LogComplex& o) const {
        if (is_zero() || o.is_zero()) return {};
        return {log_mod + o.log_mod, phase + o.phase};
    }
    LogComplex operator/(const LogComplex& o) const {
        return {log_mod - o.log_mod, phase - o.phase};
    }
};

// log(sum_i exp(v_i)) without overflow; empty input gives -inf.
inline double logsumexp(const std::vector<double>& v) {
    double m = -std::numeric_limits<double>::infinity();
    for (double x : v) m = std::max(m, x);
    if (!std::isfinite(m)) return m;
    double s = 0.0;
    for (double x : v) s += std::exp(x - m);
    return m + std::log(s);
}

// log(exp(a) + exp(b)).
inline double logaddexp(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    double m = std::max(a, b);
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

// Wrap a phase into (-pi, pi].
inline double wrap_phase(double p) {
    double tau = 2.0 * std::numbers::pi;
    double w = std::remainder(p, tau);
    if (w <= -std::numbers::pi) w += tau;
    return w;
}

}  // namespace sis
