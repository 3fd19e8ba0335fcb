#include "meridian/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "meridian/elliptic.hpp"
#include "meridian/kernels.hpp"
#include "meridian/quadrature.hpp"

namespace meridian {

namespace {

// exact z-profile integrals of the counterexample: (1-z^2)^4, (1-z^2)^2, 4z^2
constexpr double z_quartic = 256.0 / 315.0;
constexpr double z_grad_r = 16.0 / 15.0;
constexpr double z_grad_z = 8.0 / 3.0;

} // namespace

double smooth_ramp(double s) {
    if (s <= 1.0) return 0.0;
    if (s >= 2.0) return 1.0;
    const double u = s - 1.0;
    return u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}

double smooth_ramp_deriv(double s) {
    if (s <= 1.0 || s >= 2.0) return 0.0;
    const double u = s - 1.0;
    return 30.0 * u * u * (1.0 + u * (u - 2.0));
}

CutoffProfile make_cutoff(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 0.25)) {
        throw std::domain_error("make_cutoff: epsilon must lie in (0, 1/4)");
    }
    return CutoffProfile{epsilon};
}

CutoffEnergies cutoff_energies(double epsilon) {
    const CutoffProfile chi = make_cutoff(epsilon);
    CutoffEnergies e;
    // (1 - chi)^2 is 1 on [0, eps] and supported in [0, 2 eps]
    e.mass_deficit = 2.0 * integrate_adaptive(
                               [&](double r) {
                                   const double d = 1.0 - chi(r);
                                   return d * d * r * r * r;
                               },
                               0.0, 2.0 * epsilon);
    e.grad_energy = 2.0 * integrate_adaptive(
                              [&](double r) {
                                  const double d =
                                      smooth_ramp_deriv(r / epsilon) / epsilon;
                                  return d * d * r * r * r;
                              },
                              epsilon, 2.0 * epsilon);
    return e;
}

double capacity_bound(double epsilon) {
    const CutoffEnergies e = cutoff_energies(epsilon);
    return e.grad_energy + e.mass_deficit;
}

QuarticProfile quartic_profile(double alpha, double rho) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::domain_error("quartic_profile: alpha must lie in (0,1)");
    }
    if (!(rho > 0.0 && rho < 0.5)) {
        throw std::domain_error("quartic_profile: rho must lie in (0, 1/2)");
    }
    // radial profile P(s) = 1 - ramp(s): plateau 1 on [0,1], layer on [1,2]
    auto P = [](double s) { return 1.0 - smooth_ramp(s); };
    const double p4 = 4.0 * alpha;
    // plateau integral of s^{4a-1} is s^{4a}/(4a); the layer is smooth
    const double rad_quartic =
        1.0 / p4 + integrate_adaptive(
                       [&](double s) {
                           const double v = P(s);
                           return v * v * v * v * std::pow(s, p4 - 1.0);
                       },
                       1.0, 2.0);
    const double rad_layer = integrate_adaptive(
        [&](double s) {
            const double d = smooth_ramp_deriv(s);
            return d * d * s * s * s;
        },
        1.0, 2.0);
    const double rad_mass =
        0.25 + integrate_adaptive(
                   [&](double s) {
                       const double v = P(s);
                       return v * v * s * s * s;
                   },
                   1.0, 2.0);

    QuarticProfile q;
    q.quartic = std::pow(rho, p4) * rad_quartic * z_quartic;
    q.dirichlet = rho * rho * rad_layer * z_grad_r +
                  rho * rho * rho * rho * rad_mass * z_grad_z;
    q.quotient_sq = std::sqrt(q.quartic) / q.dirichlet;
    q.quotient_ckn = std::pow(q.quartic, 0.25) / std::sqrt(q.dirichlet);
    return q;
}

std::optional<double> sobolev_ratio(const SpaceTimeField& psi,
                                    const CorridorParams& params, double R) {
    const SubcylinderIndex idx = restrict_subcylinder(psi, R);
    const MeridianGrid& g = *psi.grid;
    const double a = params.a_weight;
    const double q = params.q_star;

    const std::vector<double> cellm = g.radial_cell_masses(a);
    const std::vector<double> slabs = g.radial_face_slabs(a);
    const std::vector<double> thick = g.z_face_thickness();
    const double inv_hr2 = 1.0 / (g.hr * g.hr);
    const double inv_hz2 = 1.0 / (g.hz * g.hz);

    const int last = static_cast<int>(psi.snapshots.size()) - 1;
    double lq_time = 0.0;
    double grad_time = 0.0;
    double sup_l2 = 0.0;
    for (int n = idx.it_begin; n <= last; ++n) {
        const ScalarField& f = psi.snapshots[n];
        double lq = 0.0, l2 = 0.0, grad = 0.0;
        for (int i = 0; i < idx.ir_end; ++i) {
            double rq = 0.0, r2 = 0.0;
            for (int j = idx.jz_begin; j < idx.jz_end; ++j) {
                const double v = f.at(i, j);
                rq += std::pow(std::abs(v), q);
                r2 += v * v;
            }
            lq += rq * cellm[i] * g.hz;
            l2 += r2 * cellm[i] * g.hz;
        }
        for (int i = 1; i < idx.ir_end; ++i) {
            double row = 0.0;
            for (int j = idx.jz_begin; j < idx.jz_end; ++j) {
                const double d = f.at(i, j) - f.at(i - 1, j);
                row += d * d;
            }
            grad += row * inv_hr2 * slabs[i] * g.hz;
        }
        for (int i = 0; i < idx.ir_end; ++i) {
            double row = 0.0;
            for (int j = idx.jz_begin + 1; j < idx.jz_end; ++j) {
                const double d = f.at(i, j) - f.at(i, j - 1);
                row += d * d * thick[j];
            }
            grad += row * inv_hz2 * cellm[i];
        }
        const double tau =
            (idx.it_begin == last) ? 0.0
            : (n == idx.it_begin || n == last) ? 0.5 * psi.dt
                                               : psi.dt;
        lq_time += tau * lq;
        grad_time += tau * grad;
        sup_l2 = std::max(sup_l2, std::sqrt(l2));
    }
    const double denom = sup_l2 + std::sqrt(grad_time);
    if (denom == 0.0) return std::nullopt;
    return std::pow(lq_time, 1.0 / q) / denom;
}

std::optional<double> multiplier_ratio(const ScalarField& G, double tol) {
    const MeridianGrid& g = *G.grid;
    const std::vector<double> m5 = g.radial_cell_masses(3.0);
    const int nz = g.nz;
    const double norm_sq = kernels::block_sum(g.cells(), [&](std::size_t k) {
        return G.values[k] * G.values[k] * m5[k / nz] * g.hz;
    });
    if (norm_sq == 0.0) return std::nullopt;
    const WeightedOperator op = assemble_operator(G.grid, 3.0);
    const auto [phi, rep] = solve_dirichlet(op, G, tol);
    const double l10 = kernels::block_sum(g.cells(), [&](std::size_t k) {
        const double p2 = phi.values[k] * phi.values[k];
        return p2 * p2 * p2 * p2 * p2 * m5[k / nz] * g.hz;
    });
    return std::pow(l10, 0.1) / std::sqrt(norm_sq);
}

AnnularComparison annular_comparison(const ScalarField& f, double R,
                                     double theta, double p,
                                     const CorridorParams& params) {
    if (!(theta > 0.0 && theta < 1.0)) {
        throw std::domain_error("annular_comparison: theta must lie in (0,1)");
    }
    if (!(p >= 1.0)) {
        throw std::domain_error("annular_comparison: p must be >= 1");
    }
    if (!(R > 0.0 && R <= 1.0)) {
        throw std::domain_error("annular_comparison: R must lie in (0,1]");
    }
    const MeridianGrid& g = *f.grid;
    if (!(theta * R >= 2.0 * g.hr)) {
        throw std::invalid_argument(
            "annular_comparison: annulus unresolved, need theta*R >= 2*hr");
    }
    const double a = params.a_weight;
    const std::vector<double> ma = g.radial_cell_masses(a);
    const std::vector<double> m5 = g.radial_cell_masses(3.0);
    double sum_star = 0.0;
    double sum_five = 0.0;
    for (int i = 0; i < g.nr; ++i) {
        const double r = g.r_centers[i];
        if (!(r < R)) continue;
        const bool r_core = r < theta * R;
        double row = 0.0;
        for (int j = 0; j < g.nz; ++j) {
            const double z = std::abs(g.z_centers[j]);
            if (!(z < R)) continue;
            if (r_core && z < theta * R) continue; // inside Q_{theta R}
            row += std::pow(std::abs(f.at(i, j)), p);
        }
        sum_star += row * ma[i] * g.hz;
        sum_five += row * m5[i] * g.hz;
    }
    AnnularComparison cmp;
    cmp.lhs = std::pow(sum_star, 1.0 / p);
    const double c_theta = std::pow(theta, -(a - 3.0) / p);
    cmp.rhs = c_theta * std::pow(R, (a - 3.0) / p) * std::pow(sum_five, 1.0 / p);
    return cmp;
}

} // namespace meridian
