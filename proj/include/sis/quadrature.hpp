#pragma once

#include <cmath>
#include <initializer_list>
#include <numbers>
#include <type_traits>
#include <utility>

namespace sis {

struct QuadResult {
    double value = 0.0;
    double abs_err_estimate = 0.0;
    long evaluations = 0;
    bool converged = false;
};

namespace detail {

struct DeNode {
    double x = 0.0;      // abscissa
    double w = 0.0;      // weight (Jacobian factor)
    double bgap = 0.0;   // stable distance to the right endpoint (finite rule)
    bool ok = false;
};

template <class F>
double de_eval(F&& f, const DeNode& n) {
    if constexpr (std::is_invocable_v<F&, double, double>) {
        return f(n.x, n.bgap);
    } else {
        return f(n.x);
    }
}

// One full trapezoidal pass of a doubly-exponential rule at step h.
template <class F, class Node>
double de_sum(F&& f, Node&& node, double h, long& evals) {
    double sum = 0.0;
    {
        DeNode n = node(0.0);
        if (n.ok) {
            sum += n.w * de_eval(f, n);
            ++evals;
        }
    }
    for (int dir : {+1, -1}) {
        int dead = 0;
        for (int k = 1; k < 100000; ++k) {
            DeNode n = node(dir * k * h);
            if (!n.ok) break;
            double term = n.w * de_eval(f, n);
            ++evals;
            sum += term;
            if (std::abs(term) <= 1e-300 ||
                std::abs(term) <= 1e-18 * (std::abs(sum) + 1e-300)) {
                if (++dead >= 3) break;
            } else {
                dead = 0;
            }
        }
    }
    return sum * h;
}

template <class F, class Node>
QuadResult de_integrate(F&& f, Node&& node, double rel_tol) {
    QuadResult r;
    double h = 1.0;
    double prev = de_sum(f, node, h, r.evaluations);
    for (int level = 1; level <= 12; ++level) {
        h *= 0.5;
        double cur = de_sum(f, node, h, r.evaluations);
        double diff = std::abs(cur - prev);
        r.value = cur;
        r.abs_err_estimate = diff;
        if (diff <= rel_tol * std::max(std::abs(cur), 1e-15)) {
            r.converged = true;
            return r;
        }
        prev = cur;
    }
    r.converged = false;
    return r;
}

}  // namespace detail

// Tanh-sinh rule on a finite interval [a, b].  Integrable endpoint
// singularities are fine: nodes never touch the endpoints, and an integrand
// callable as f(x, bgap) receives the distance to the right endpoint
// computed without cancellation (for weights singular as x -> b).
template <class F>
QuadResult quad_finite(F&& f, double a, double b, double rel_tol = 1e-12) {
    double d = 0.5 * (b - a);
    // Single-argument integrands must never see an abscissa collapsed onto an
    // endpoint; gap-aware integrands tolerate that (they read bgap, not x).
    constexpr bool gap_aware = std::is_invocable_v<F&, double, double>;
    auto node = [a, b, d](double t) {
        detail::DeNode out;
        double u = 0.5 * std::numbers::pi * std::sinh(t);
        if (std::abs(u) > 350.0) return out;
        double e2 = std::exp(-2.0 * std::abs(u));
        double gap = d * 2.0 * e2 / (1.0 + e2);  // distance to the near endpoint
        if (gap <= 0.0) return out;
        double sech = 1.0 / std::cosh(u);
        out.w = d * 0.5 * std::numbers::pi * std::cosh(t) * sech * sech;
        if (u >= 0.0) {
            out.x = b - gap;
            out.bgap = gap;
        } else {
            out.x = a + gap;
            out.bgap = b - out.x;
        }
        if constexpr (!gap_aware) {
            if (out.x <= a || out.x >= b) return out;  // collapsed in rounding
        }
        out.ok = true;
        return out;
    };
    return detail::de_integrate(f, node, rel_tol);
}

// Exp-sinh rule on [0, inf).
template <class F>
QuadResult quad_semiinf(F&& f, double rel_tol = 1e-12) {
    auto node = [](double t) {
        detail::DeNode out;
        double u = 0.5 * std::numbers::pi * std::sinh(t);
        if (std::abs(u) > 700.0) return out;
        double x = std::exp(u);
        out.x = x;
        out.w = 0.5 * std::numbers::pi * std::cosh(t) * x;
        out.ok = true;
        return out;
    };
    return detail::de_integrate(f, node, rel_tol);
}

// Tanh-sinh rule on [0, 1).
template <class F>
QuadResult quad_01(F&& f, double rel_tol = 1e-12) {
    return quad_finite(std::forward<F>(f), 0.0, 1.0, rel_tol);
}

}  // namespace sis
