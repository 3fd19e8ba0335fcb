#include "meridian/kernels.hpp"

namespace meridian::kernels {

double dot(std::span<const double> x, std::span<const double> y) {
    return block_sum(x.size(), [&](std::size_t k) { return x[k] * y[k]; });
}

double dot_weighted(std::span<const double> x, std::span<const double> y,
                    std::span<const double> w) {
    return block_sum(x.size(), [&](std::size_t k) { return x[k] * y[k] * w[k]; });
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < n; ++k) y[k] += a * x[k];
}

void xpay(std::span<const double> r, double beta, std::span<double> p) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(r.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < n; ++k) p[k] = r[k] + beta * p[k];
}

namespace {

// Row kernel shared by the parallel and serial drivers.  Each radial row is
// independent, so parallelising over i needs no reduction and stays exact.
inline void stencil_row(int i, int nr, int nz, const double* diag,
                        const double* cr_lo, const double* cr_hi,
                        double inv_hz2, double shift, double scale,
                        const double* u, double* out) {
    const double lo = cr_lo[i];
    const double hi = cr_hi[i];
    const double* ur = u + static_cast<std::size_t>(i) * nz;
    const double* um = i > 0 ? ur - nz : nullptr;
    const double* up = i < nr - 1 ? ur + nz : nullptr;
    const double* dg = diag + static_cast<std::size_t>(i) * nz;
    double* o = out + static_cast<std::size_t>(i) * nz;
    for (int j = 0; j < nz; ++j) {
        double s = dg[j] * ur[j];
        if (um) s -= lo * um[j];
        if (up) s -= hi * up[j];
        if (j > 0) s -= inv_hz2 * ur[j - 1];
        if (j < nz - 1) s -= inv_hz2 * ur[j + 1];
        o[j] = shift * ur[j] + scale * s;
    }
}

} // namespace

void stencil_apply(int nr, int nz, std::span<const double> diag,
                   std::span<const double> cr_lo, std::span<const double> cr_hi,
                   double inv_hz2, double shift, double scale,
                   std::span<const double> u, std::span<double> out) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < nr; ++i) {
        stencil_row(i, nr, nz, diag.data(), cr_lo.data(), cr_hi.data(), inv_hz2,
                    shift, scale, u.data(), out.data());
    }
}

namespace serial {

double dot(std::span<const double> x, std::span<const double> y) {
    // Same blocked summation order as the parallel version.
    const std::size_t n = x.size();
    double total = 0.0;
    for (std::size_t lo = 0; lo < n; lo += reduction_block) {
        const std::size_t hi = std::min(n, lo + reduction_block);
        double s = 0.0;
        for (std::size_t k = lo; k < hi; ++k) s += x[k] * y[k];
        total += s;
    }
    return total;
}

double dot_weighted(std::span<const double> x, std::span<const double> y,
                    std::span<const double> w) {
    const std::size_t n = x.size();
    double total = 0.0;
    for (std::size_t lo = 0; lo < n; lo += reduction_block) {
        const std::size_t hi = std::min(n, lo + reduction_block);
        double s = 0.0;
        for (std::size_t k = lo; k < hi; ++k) s += x[k] * y[k] * w[k];
        total += s;
    }
    return total;
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
    for (std::size_t k = 0; k < x.size(); ++k) y[k] += a * x[k];
}

void xpay(std::span<const double> r, double beta, std::span<double> p) {
    for (std::size_t k = 0; k < r.size(); ++k) p[k] = r[k] + beta * p[k];
}

void stencil_apply(int nr, int nz, std::span<const double> diag,
                   std::span<const double> cr_lo, std::span<const double> cr_hi,
                   double inv_hz2, double shift, double scale,
                   std::span<const double> u, std::span<double> out) {
    for (int i = 0; i < nr; ++i) {
        stencil_row(i, nr, nz, diag.data(), cr_lo.data(), cr_hi.data(), inv_hz2,
                    shift, scale, u.data(), out.data());
    }
}

} // namespace serial

} // namespace meridian::kernels
