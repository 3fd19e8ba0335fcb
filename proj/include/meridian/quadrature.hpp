/// @file quadrature.hpp
/// Adaptive Simpson quadrature for the one-dimensional profile integrals.
/// Tolerance handling: one coarse pass sets the absolute budget from the
/// requested relative tolerance, then the classic Richardson split runs with
/// per-interval budget halving.
#pragma once

#include <cmath>

namespace meridian {

namespace detail {

template <class F>
double simpson_split(F& f, double a, double m, double b, double fa, double fm,
                     double fb, double whole, double eps, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double h6 = (b - a) / 12.0;
    const double left = h6 * (fa + 4.0 * flm + fm);
    const double right = h6 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * eps) {
        return left + right + delta / 15.0;
    }
    return simpson_split(f, a, lm, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
           simpson_split(f, m, rm, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

} // namespace detail

/// integral of f over [a, b] to relative tolerance rel_tol.
template <class F>
double integrate_adaptive(F f, double a, double b, double rel_tol = 1e-12,
                          int max_depth = 48) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double scale = std::abs(whole) + std::abs(b - a) * 1e-30 + 1e-300;
    return detail::simpson_split(f, a, m, b, fa, fm, fb, whole, rel_tol * scale,
                                 max_depth);
}

} // namespace meridian
