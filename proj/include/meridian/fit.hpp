/// @file fit.hpp
/// Least-squares slope fitting for the scaling-law experiments.
#pragma once

#include <span>

namespace meridian {

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double max_abs_residual = 0.0;
    int n_points = 0;
};

/// Ordinary least squares through (xs, ys); deterministic summation order.
/// Throws std::invalid_argument unless sizes match and are at least 2.
FitResult fit_linear(std::span<const double> xs, std::span<const double> ys);

/// Least squares through (log xs, log ys).  Throws std::domain_error on a
/// nonpositive entry.
FitResult fit_loglog(std::span<const double> xs, std::span<const double> ys);

} // namespace meridian
