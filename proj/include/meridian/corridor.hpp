/// @file corridor.hpp
/// Exponent calculus for the weighted five-dimensional lift of the
/// axisymmetric swirl problem.  Every derived quantity is an explicit
/// closed-form function of the swirl decay exponent alpha.
#pragma once

#include <vector>

namespace meridian {

/// Derived exponent family for a swirl decay exponent alpha in (0,1).
///
/// Conventions: lambda_hardy = 1 - alpha^2 is the inverse-square potential
/// strength, root_delta = sqrt(2 - alpha^2) feeds the indicial root
/// m_plus = 3*alpha - 2 + root_delta, and a_weight = 1 + 2*root_delta is the
/// radial weight power of the renormalized measure r^a dr dz.  The effective
/// dimension is n_star = a_weight + 2.  in_corridor marks 3/4 < alpha < 1,
/// the window where gain_delta = 4*alpha - 3 is positive.
struct CorridorParams {
    double alpha;
    double lambda_hardy;
    double gain_delta;
    double root_delta;
    double m_plus;
    double beta_star;
    double a_weight;
    double n_star;
    double q_star;
    double p_star;
    double theta_interp;
    double beta_dg;
    double source_exponent;
    double annular_exponent;
    bool in_corridor;
};

/// Computes the full exponent family.  Throws std::domain_error unless
/// 0 < alpha < 1 (endpoints excluded: both degenerate the calculus).
CorridorParams derive_corridor(double alpha);

/// Residual of the indicial identity m*(m + 4 - 6*alpha) = 2*(1-alpha)*(5*alpha-1)
/// at m = m_plus.  Exactly zero in real arithmetic; rounding keeps it below
/// 1e-12 for all admissible alpha.
double indicial_residual(const CorridorParams& p);

/// Row-per-alpha table.  Throws std::domain_error naming the offending row
/// index if any entry is inadmissible.  An empty input yields an empty table.
std::vector<CorridorParams> exponent_table(const std::vector<double>& alphas);

} // namespace meridian
