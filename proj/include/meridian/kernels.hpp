/// @file kernels.hpp
/// Hot loops shared by the solvers: weighted reductions, vector updates and
/// the five-point stencil application.  The OpenMP versions live in
/// meridian::kernels; bitwise-identical serial loops are kept in
/// meridian::kernels::serial as the reference for tests and benchmarks.
///
/// Reductions are blocked: partial sums over fixed-size index blocks are
/// computed in parallel and combined sequentially in block order, so the
/// result does not depend on the number of threads.
#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

namespace meridian::kernels {

inline constexpr std::size_t reduction_block = 4096;

/// Deterministic sum of term(0..n-1).  Identical result for any thread count.
template <class Term>
double block_sum(std::size_t n, Term&& term) {
    const std::size_t nb = (n + reduction_block - 1) / reduction_block;
    if (nb <= 1) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += term(k);
        return s;
    }
    std::vector<double> partial(nb);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(nb); ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * reduction_block;
        const std::size_t hi = std::min(n, lo + reduction_block);
        double s = 0.0;
        for (std::size_t k = lo; k < hi; ++k) s += term(k);
        partial[static_cast<std::size_t>(b)] = s;
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

/// sum_k x[k] * y[k]
double dot(std::span<const double> x, std::span<const double> y);

/// sum_k x[k] * y[k] * w[k]
double dot_weighted(std::span<const double> x, std::span<const double> y,
                    std::span<const double> w);

/// y += a * x
void axpy(double a, std::span<const double> x, std::span<double> y);

/// p = r + beta * p
void xpay(std::span<const double> r, double beta, std::span<double> p);

/// Applies the five-point meridian stencil:
///   out_ij = shift*u_ij + scale*( diag_ij*u_ij - cr_lo_i*u_(i-1)j
///            - cr_hi_i*u_(i+1)j - inv_hz2*(u_i(j-1) + u_i(j+1)) )
/// with radial index i major, missing neighbours dropped (cr_lo[0] and
/// cr_hi[nr-1] are zero by construction; boundary closure sits in diag).
void stencil_apply(int nr, int nz, std::span<const double> diag,
                   std::span<const double> cr_lo, std::span<const double> cr_hi,
                   double inv_hz2, double shift, double scale,
                   std::span<const double> u, std::span<double> out);

namespace serial {

double dot(std::span<const double> x, std::span<const double> y);
double dot_weighted(std::span<const double> x, std::span<const double> y,
                    std::span<const double> w);
void axpy(double a, std::span<const double> x, std::span<double> y);
void xpay(std::span<const double> r, double beta, std::span<double> p);
void stencil_apply(int nr, int nz, std::span<const double> diag,
                   std::span<const double> cr_lo, std::span<const double> cr_hi,
                   double inv_hz2, double shift, double scale,
                   std::span<const double> u, std::span<double> out);

} // namespace serial

} // namespace meridian::kernels
