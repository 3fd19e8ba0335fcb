/// @file iteration.hpp
/// The two scalar recursions that drive the regularity argument: the Morrey
/// scale iteration E(theta R) <= kappa E(R) + C R^delta E(R)^2 and the
/// De Giorgi level recursion, plus the closure exponent combiners.
///
/// Verdict thresholds are fixed: a value below 1e-300 is decayed, above
/// 1e+300 (or non-finite) diverged, otherwise the budget is exhausted.
#pragma once

#include <vector>

#include "meridian/corridor.hpp"

namespace meridian {

inline constexpr double decay_floor = 1e-300;
inline constexpr double blowup_ceiling = 1e+300;

enum class Verdict { decayed, diverged, exhausted };
const char* to_string(Verdict v);

template <class Config>
struct IterationTrace {
    Config config;
    std::vector<double> values; // includes the starting value
    Verdict verdict = Verdict::exhausted;
};

struct MorreyConfig {
    double kappa = 0.5;      // linear contraction factor, in (0,1)
    double c_src = 1.0;      // source coefficient, > 0
    double gain_delta = 0.2; // scale gain exponent, > 0 (4 alpha - 3 in corridor)
    double theta = 0.5;      // scale ratio, in (0,1)
    double r0 = 1.0;         // starting scale, in (0,1]
    double e0 = 0.0;         // starting energy, >= 0
    int max_steps = 100000;
};

using MorreyTrace = IterationTrace<MorreyConfig>;

/// Iterates E_{n+1} = kappa E_n + c_src (theta^n r0)^gain_delta E_n^2.
/// Decay is guaranteed whenever e0 <= (1-kappa)/(2 c_src r0^gain_delta).
/// Throws std::invalid_argument on an inadmissible config.
MorreyTrace morrey_run(const MorreyConfig& cfg);

/// Critical e0 separating decay from divergence for the given config
/// (its e0 is ignored), located by log bisection to relative width tol.
/// Always at least the guaranteed-decay bound.
double morrey_threshold(const MorreyConfig& cfg, double tol);

struct DeGiorgiConfig {
    double beta_dg = 0.25; // nonlinearity gain, in (0,1)
    double lambda1 = 2.5;  // dyadic rate of the quadratic term, > 0
    double lambda2 = 2.5;  // dyadic rate of the tail term, > 0
    double c_big = 16.0;   // aggregate constant, > 0
    double K = 1.0;        // level scale, > 0
    double R = 1.0;        // ball radius, > 0
    double phi_r = 0.0;    // tail mass, >= 0
    double y0 = 0.0;       // starting level energy, >= 0
    int max_steps = 2000;
};

using DeGiorgiTrace = IterationTrace<DeGiorgiConfig>;

/// Corridor-driven config: beta_dg = 2/(N*+2) and the default rates
/// lambda1 = lambda2 = 2 (1 + beta_dg).
DeGiorgiConfig degiorgi_config_from(const CorridorParams& params, double K,
                                    double R, double phi_r, double y0);

/// Iterates Y_{j+1} = c 2^{lambda1 j} R^{-2} K^{-2 beta} Y_j^{1+beta}
///                  + c 2^{lambda2 j} K^{2-2 beta} phi_r Y_j^{beta},
/// with the 0^beta = 0 convention so Y = 0 is absorbing.
DeGiorgiTrace degiorgi_run(const DeGiorgiConfig& cfg);

/// Critical y0 separating decay from divergence (config's y0 ignored), log
/// bisection to relative width tol.  With phi_r = 0 this sits within a small
/// bracket of the classical bound c_big^{-1/beta} 2^{-lambda1/beta^2} at
/// K = R = 1.  Throws std::invalid_argument when no bracket exists.
double degiorgi_threshold(const DeGiorgiConfig& cfg, double tol);

/// Level choice K0 = c0 (R^{-(N*+2)/2} norm_h + R^{-N*/2} phi_r^{1/2}).
double degiorgi_k0(double norm_h, double phi_r, double R,
                   const CorridorParams& params, double c0);

struct AxisEnvelope {
    double f_bound = 0.0; // h_bound * r^{m_plus}
    double v_bound = 0.0; // sqrt(h_bound) * r^{beta_star}
};

/// Quantitative axis vanishing rates implied by a sup bound on the
/// renormalized variable (v^2 = r^{2-2 alpha} F links the two powers).
AxisEnvelope axis_envelope(double h_bound, const CorridorParams& params,
                           double r);

/// Source majorant R^{source_exponent} * sup_weighted_v * l2_v_over_r; the
/// exponent equals 2 alpha + beta_star - 1 and is positive in the corridor.
double source_bound(double R, double sup_weighted_v, double l2_v_over_r,
                    const CorridorParams& params);

} // namespace meridian
