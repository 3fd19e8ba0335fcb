/// @file functionals.hpp
/// The explicit variational constructions: axis cutoff capacity rates, the
/// quartic counterexample profile, the parabolic Sobolev ratio, the
/// multiplier ratio, and the annular measure comparison.
///
/// One fixed smooth ramp drives every profile: the quintic smoothstep
/// eta(s) = 0 for s <= 1, 1 for s >= 2, C^2 across the joints.  Profile
/// integrals are adaptive 1D quadrature on the analytic profiles, not grid
/// sums; grid evaluation of the same objects is available through the grid
/// module for cross-checks.
#pragma once

#include <optional>
#include <vector>

#include "meridian/corridor.hpp"
#include "meridian/fit.hpp"
#include "meridian/grid.hpp"

namespace meridian {

/// Quintic smoothstep ramp: 0 for s <= 1, 1 for s >= 2, monotone.
double smooth_ramp(double s);
/// Its derivative; vanishes at both joints.
double smooth_ramp_deriv(double s);

/// Radial axis cutoff chi_eps(r) = smooth_ramp(r/eps): 0 on r <= eps,
/// 1 on r >= 2 eps.
struct CutoffProfile {
    double epsilon;
    double operator()(double r) const { return smooth_ramp(r / epsilon); }
};

/// Makes the profile; epsilon must lie in (0, 1/4) so the layer fits in Q1.
CutoffProfile make_cutoff(double epsilon);

struct CutoffEnergies {
    double mass_deficit = 0.0; // integral of (1-chi)^2 r^3, z-factor 2
    double grad_energy = 0.0;  // integral of chi'^2 r^3, z-factor 2
};

/// Exact-rate pair: mass_deficit scales like eps^4, grad_energy like eps^2.
CutoffEnergies cutoff_energies(double epsilon);

/// Energy of the capacity competitor 1 - chi_eps:
/// grad_energy + mass_deficit; tends to zero as eps does.
double capacity_bound(double epsilon);

struct QuarticProfile {
    double quartic = 0.0;      // |v|^4 against r^{4 alpha - 1} dr dz
    double dirichlet = 0.0;    // |grad v|^2 against r^3 dr dz
    double quotient_sq = 0.0;  // sqrt(quartic) / dirichlet
    double quotient_ckn = 0.0; // quartic^{1/4} / sqrt(dirichlet)
};

/// Counterexample profile v_rho(r,z) = (1 - smooth_ramp(r/rho)) (1 - z^2):
/// equal to (1-z^2) near the axis, zero for r >= 2 rho.  Requires
/// alpha in (0,1) and rho in (0, 1/2).  quartic scales exactly like
/// rho^{4 alpha}, dirichlet like rho^2, so quotient_sq blows up like
/// rho^{2 alpha - 2} and quotient_ckn like rho^{alpha - 1}.
QuarticProfile quartic_profile(double alpha, double rho);

/// Log-spaced scaling experiment: strictly decreasing parameters, one value
/// per parameter, and the fitted log-log slope.
struct ScalingSeries {
    std::vector<double> params;
    std::vector<double> values;
    FitResult fit;
};

/// Builds the series and fits it.  Throws std::invalid_argument unless there
/// are >= 4 strictly decreasing positive parameters.
template <class F>
ScalingSeries make_series(std::vector<double> params, F&& eval) {
    if (params.size() < 4) {
        throw std::invalid_argument("make_series: need at least 4 points");
    }
    for (std::size_t k = 0; k + 1 < params.size(); ++k) {
        if (!(params[k] > params[k + 1])) {
            throw std::invalid_argument("make_series: parameters must decrease");
        }
    }
    ScalingSeries s;
    s.params = std::move(params);
    s.values.resize(s.params.size());
    for (std::size_t k = 0; k < s.params.size(); ++k)
        s.values[k] = eval(s.params[k]);
    s.fit = fit_loglog(s.params, s.values);
    return s;
}

/// Space-time ratio of the weighted parabolic Sobolev inequality:
/// ||psi||_{L^{q*}(mu* dt)} over (ess-sup_t ||psi(t)||_{L^2(mu*)} +
/// ||grad psi||_{L^2(mu* dt)}), both sides over the subcylinder of radius R.
/// nullopt when the denominator vanishes.
std::optional<double> sobolev_ratio(const SpaceTimeField& psi,
                                    const CorridorParams& params, double R);

/// Solves -lap_5 Phi = G (Dirichlet zero on the non-axis boundary) and
/// returns ||Phi||_{L^10(mu_5)} / ||G||_{L^2(mu_5)}; nullopt when G vanishes.
std::optional<double> multiplier_ratio(const ScalarField& G, double tol = 1e-10);

struct AnnularComparison {
    double lhs = 0.0; // ||f||_{L^p(A_R, mu*)}
    double rhs = 0.0; // C_theta R^{(a-3)/p} ||f||_{L^p(A_R, mu_5)}
};

/// Measure comparison on the annulus A_R = Q_R minus Q_{theta R} (cell-center
/// rule).  C_theta = theta^{-(a-3)/p} with a = params.a_weight >= 3; the pair
/// satisfies lhs <= rhs.  Throws std::invalid_argument when theta R < 2 hr
/// (annulus unresolved) and std::domain_error on bad theta, p, or R.
AnnularComparison annular_comparison(const ScalarField& f, double R,
                                     double theta, double p,
                                     const CorridorParams& params);

} // namespace meridian
