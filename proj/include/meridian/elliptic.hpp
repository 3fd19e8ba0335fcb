/// @file elliptic.hpp
/// Finite-volume weighted Laplacian on the meridian grid and the conjugate
/// gradient machinery around it.  The operator is the pointwise form
/// A = M^{-1} K with M the diagonal of exact cell masses, so A is symmetric
/// positive definite in the M-weighted inner product and CG runs there.
///
/// Dirichlet data (zero) enters through half-cell fluxes on r = 1 and
/// z = +-1 only.  The r = 0 face has zero flux weight by construction.
#pragma once

#include <memory>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "meridian/grid.hpp"

namespace meridian {

/// Linear solve failed to reach the requested residual within the iteration
/// budget.  Carries the last relative residual seen.
struct SolveError : std::runtime_error {
    double residual;
    int iterations;
    SolveError(const std::string& msg, double res, int iters)
        : std::runtime_error(msg), residual(res), iterations(iters) {}
};

struct WeightedOperator {
    std::shared_ptr<const MeridianGrid> grid;
    double weight_power = 0.0;
    std::vector<double> cell_mass; // M diagonal: radial mass * hz, per cell
    std::vector<double> diag;      // stencil diagonal incl. any potential
    std::vector<double> cr_lo;     // coupling to i-1, per radial index, [0] = 0
    std::vector<double> cr_hi;     // coupling to i+1, per radial index, [nr-1] = 0
    double inv_hz2 = 0.0;

    /// out = A u
    void apply(std::span<const double> u, std::span<double> out) const;
    /// out = shift*u + scale*(A u)
    void apply_shifted(double shift, double scale, std::span<const double> u,
                       std::span<double> out) const;
    /// M-weighted inner product.
    double inner(std::span<const double> x, std::span<const double> y) const;
};

/// Assembles the weighted Laplacian for measure r^weight_power dr dz, plus an
/// optional nonnegative zero-order potential sampled at cell centers.
/// Throws std::invalid_argument on a negative potential entry or shape
/// mismatch.
WeightedOperator assemble_operator(std::shared_ptr<const MeridianGrid> grid,
                                   double weight_power,
                                   const ScalarField* potential = nullptr);

/// Iteration budget for a relative residual tol on an nr x nz grid.
int cg_iteration_cap(int nr, int nz, double tol);

struct CgResult {
    int iterations = 0;
    double relative_residual = 0.0;
};

/// Solves (shift*I + scale*A) x = rhs by CG in the M inner product, starting
/// from the incoming x.  Convergence is the true residual below
/// tol * ||rhs||_M (rhs = 0 yields x = 0 directly).  Throws SolveError when
/// the iteration budget runs out.
CgResult cg_solve(const WeightedOperator& op, double shift, double scale,
                  std::span<const double> rhs, std::span<double> x, double tol);

struct SolveReport {
    int iterations = 0;
    double relative_residual = 0.0;
    /// |<A u, u>_M - <f, u>_M|, the discrete energy identity gap.
    double energy_gap = 0.0;
};

/// Solves A u = f.  The report's energy gap is small of order
/// tol * ||f|| * ||u|| when CG converged.
std::pair<ScalarField, SolveReport> solve_dirichlet(const WeightedOperator& op,
                                                    const ScalarField& rhs,
                                                    double tol);

struct EigenReport {
    double mu1 = 0.0;
    int iterations = 0;
};

/// Smallest eigenvalue of op by inverse power iteration with Rayleigh
/// estimates; stops when successive estimates differ by less than tol.
/// The returned mode has unit M-norm and positive mean.
std::pair<ScalarField, EigenReport> friedrichs_mu1(const WeightedOperator& op,
                                                   double tol = 1e-8);

/// Convenience overload assembling the potential-free operator first.
std::pair<ScalarField, EigenReport> friedrichs_mu1(
    std::shared_ptr<const MeridianGrid> grid, double weight_power,
    double tol = 1e-8);

/// Solves the potential-free Dirichlet problem for weight r^3 with the given
/// source, on the source's own grid.
std::pair<ScalarField, SolveReport> solve_potential(const ScalarField& source,
                                                    double tol = 1e-10);

} // namespace meridian
