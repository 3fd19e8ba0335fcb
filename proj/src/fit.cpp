#include "meridian/fit.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace meridian {

FitResult fit_linear(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw std::invalid_argument("fit_linear: need matching sizes >= 2");
    }
    const std::size_t n = xs.size();
    double sx = 0.0, sy = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        sx += xs[k];
        sy += ys[k];
    }
    const double mx = sx / static_cast<double>(n);
    const double my = sy / static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        sxx += (xs[k] - mx) * (xs[k] - mx);
        sxy += (xs[k] - mx) * (ys[k] - my);
    }
    if (sxx == 0.0) {
        throw std::invalid_argument("fit_linear: degenerate abscissae");
    }
    FitResult r;
    r.slope = sxy / sxx;
    r.intercept = my - r.slope * mx;
    r.n_points = static_cast<int>(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double resid = std::abs(ys[k] - (r.intercept + r.slope * xs[k]));
        if (resid > r.max_abs_residual) r.max_abs_residual = resid;
    }
    return r;
}

FitResult fit_loglog(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw std::invalid_argument("fit_loglog: need matching sizes >= 2");
    }
    std::vector<double> lx(xs.size()), ly(ys.size());
    for (std::size_t k = 0; k < xs.size(); ++k) {
        if (!(xs[k] > 0.0) || !(ys[k] > 0.0)) {
            throw std::domain_error("fit_loglog: entries must be positive");
        }
        lx[k] = std::log(xs[k]);
        ly[k] = std::log(ys[k]);
    }
    return fit_linear(lx, ly);
}

} // namespace meridian
