#include "meridian/elliptic.hpp"

#include <cmath>
#include <string>

#include "meridian/kernels.hpp"

namespace meridian {

void WeightedOperator::apply(std::span<const double> u,
                             std::span<double> out) const {
    kernels::stencil_apply(grid->nr, grid->nz, diag, cr_lo, cr_hi, inv_hz2, 0.0,
                           1.0, u, out);
}

void WeightedOperator::apply_shifted(double shift, double scale,
                                     std::span<const double> u,
                                     std::span<double> out) const {
    kernels::stencil_apply(grid->nr, grid->nz, diag, cr_lo, cr_hi, inv_hz2,
                           shift, scale, u, out);
}

double WeightedOperator::inner(std::span<const double> x,
                               std::span<const double> y) const {
    return kernels::dot_weighted(x, y, cell_mass);
}

WeightedOperator assemble_operator(std::shared_ptr<const MeridianGrid> grid,
                                   double weight_power,
                                   const ScalarField* potential) {
    const MeridianGrid& g = *grid;
    if (potential) {
        if (potential->grid->nr != g.nr || potential->grid->nz != g.nz) {
            throw std::invalid_argument("assemble_operator: potential grid mismatch");
        }
        for (double v : potential->values) {
            if (!(v >= 0.0)) {
                throw std::invalid_argument(
                    "assemble_operator: potential must be nonnegative");
            }
        }
    }
    WeightedOperator op;
    op.grid = grid;
    op.weight_power = weight_power;
    op.inv_hz2 = 1.0 / (g.hz * g.hz);

    const std::vector<double> wr = g.radial_cell_masses(weight_power);
    op.cell_mass.resize(g.cells());
    for (int i = 0; i < g.nr; ++i)
        for (int j = 0; j < g.nz; ++j) op.cell_mass[g.index(i, j)] = wr[i] * g.hz;

    // Face transmissibilities r_face^a / hr, normalized by the cell mass.
    // The r = 0 face weight vanishes, so cr_lo[0] = 0 and no axis condition
    // is ever imposed.  The r = 1 face uses the half-cell distance hr/2.
    op.cr_lo.assign(g.nr, 0.0);
    op.cr_hi.assign(g.nr, 0.0);
    std::vector<double> r_diag(g.nr, 0.0);
    for (int i = 0; i < g.nr; ++i) {
        const double f_lo =
            i == 0 ? 0.0 : std::pow(g.r_faces[i], weight_power) / g.hr;
        double f_hi = std::pow(g.r_faces[i + 1], weight_power) / g.hr;
        if (i == g.nr - 1) f_hi *= 2.0; // Dirichlet half-cell flux at r = 1
        if (i > 0) op.cr_lo[i] = f_lo / wr[i];
        if (i < g.nr - 1) op.cr_hi[i] = f_hi / wr[i];
        r_diag[i] = (f_lo + f_hi) / wr[i];
    }
    std::vector<double> z_diag(g.nz, 2.0 * op.inv_hz2);
    z_diag[0] += op.inv_hz2; // Dirichlet half-cell flux at z = -1
    z_diag[g.nz - 1] += op.inv_hz2;

    op.diag.resize(g.cells());
    for (int i = 0; i < g.nr; ++i) {
        for (int j = 0; j < g.nz; ++j) {
            const std::size_t k = g.index(i, j);
            op.diag[k] = r_diag[i] + z_diag[j] +
                         (potential ? potential->values[k] : 0.0);
        }
    }
    return op;
}

int cg_iteration_cap(int nr, int nz, double tol) {
    const double n = static_cast<double>(nr) * nz;
    return static_cast<int>(
        std::ceil(20.0 * std::sqrt(n) * std::log(1.0 / tol)));
}

CgResult cg_solve(const WeightedOperator& op, double shift, double scale,
                  std::span<const double> rhs, std::span<double> x, double tol) {
    const std::size_t n = rhs.size();
    const double bnorm = std::sqrt(op.inner(rhs, rhs));
    if (bnorm == 0.0) {
        for (double& v : x) v = 0.0;
        return {0, 0.0};
    }
    const int cap = cg_iteration_cap(op.grid->nr, op.grid->nz, tol);
    std::vector<double> r(n), p(n), q(n);

    auto refresh_residual = [&]() {
        op.apply_shifted(shift, scale, x, q);
        for (std::size_t k = 0; k < n; ++k) r[k] = rhs[k] - q[k];
        return op.inner(r, r);
    };

    double rho = refresh_residual();
    p.assign(r.begin(), r.end());
    int iters = 0;
    const double target = tol * bnorm;
    for (int restart = 0; restart < 5; ++restart) {
        while (std::sqrt(rho) > target) {
            if (iters >= cap) {
                throw SolveError("cg_solve: iteration budget exhausted at residual " +
                                     std::to_string(std::sqrt(rho) / bnorm),
                                 std::sqrt(rho) / bnorm, iters);
            }
            op.apply_shifted(shift, scale, p, q);
            const double alpha = rho / op.inner(p, q);
            kernels::axpy(alpha, p, x);
            kernels::axpy(-alpha, q, r);
            const double rho_new = op.inner(r, r);
            kernels::xpay(r, rho_new / rho, p);
            rho = rho_new;
            ++iters;
        }
        // recurrence converged; accept only if the true residual agrees
        rho = refresh_residual();
        if (std::sqrt(rho) <= target * 1.0000001) {
            return {iters, std::sqrt(rho) / bnorm};
        }
        p.assign(r.begin(), r.end());
    }
    throw SolveError("cg_solve: true residual stagnated", std::sqrt(rho) / bnorm,
                     iters);
}

std::pair<ScalarField, SolveReport> solve_dirichlet(const WeightedOperator& op,
                                                    const ScalarField& rhs,
                                                    double tol) {
    if (rhs.grid->nr != op.grid->nr || rhs.grid->nz != op.grid->nz) {
        throw std::invalid_argument("solve_dirichlet: rhs grid mismatch");
    }
    ScalarField u = zero_field(op.grid);
    const CgResult cg = cg_solve(op, 0.0, 1.0, rhs.values, u.values, tol);
    std::vector<double> au(u.values.size());
    op.apply(u.values, au);
    SolveReport rep;
    rep.iterations = cg.iterations;
    rep.relative_residual = cg.relative_residual;
    rep.energy_gap =
        std::abs(op.inner(au, u.values) - op.inner(rhs.values, u.values));
    return {std::move(u), rep};
}

std::pair<ScalarField, EigenReport> friedrichs_mu1(const WeightedOperator& op,
                                                   double tol) {
    const std::size_t n = op.grid->cells();
    ScalarField x = zero_field(op.grid);
    for (std::size_t k = 0; k < n; ++k) x.values[k] = 1.0;
    double nrm = std::sqrt(op.inner(x.values, x.values));
    for (double& v : x.values) v /= nrm;

    std::vector<double> y(n, 0.0);
    const double inner_tol = std::min(1e-10, tol * 1e-2);
    double mu = 0.0;
    const int max_outer = 1000;
    for (int it = 1; it <= max_outer; ++it) {
        cg_solve(op, 0.0, 1.0, x.values, y, inner_tol);
        const double xy = op.inner(x.values, y);
        const double yy = op.inner(y, y);
        const double mu_new = xy / yy; // Rayleigh quotient of the iterate
        const double ynorm = std::sqrt(yy);
        for (std::size_t k = 0; k < n; ++k) x.values[k] = y[k] / ynorm;
        if (it > 1 && std::abs(mu_new - mu) < tol) {
            mu = mu_new;
            // positive-mean normalization; the ground mode has one sign
            double mean = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                mean += x.values[k] * op.cell_mass[k];
            if (mean < 0.0)
                for (double& v : x.values) v = -v;
            return {std::move(x), EigenReport{mu, it}};
        }
        mu = mu_new;
    }
    throw SolveError("friedrichs_mu1: no eigenvalue convergence", mu, max_outer);
}

std::pair<ScalarField, EigenReport> friedrichs_mu1(
    std::shared_ptr<const MeridianGrid> grid, double weight_power, double tol) {
    return friedrichs_mu1(assemble_operator(std::move(grid), weight_power),
                          tol);
}

std::pair<ScalarField, SolveReport> solve_potential(const ScalarField& source,
                                                    double tol) {
    return solve_dirichlet(assemble_operator(source.grid, 3.0), source, tol);
}

} // namespace meridian
