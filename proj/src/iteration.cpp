#include "meridian/iteration.hpp"

#include <cmath>
#include <stdexcept>

namespace meridian {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::decayed: return "decayed";
        case Verdict::diverged: return "diverged";
        default: return "exhausted";
    }
}

namespace {

void validate(const MorreyConfig& c) {
    if (!(c.kappa > 0.0 && c.kappa < 1.0))
        throw std::invalid_argument("morrey: kappa must lie in (0,1)");
    if (!(c.c_src > 0.0))
        throw std::invalid_argument("morrey: c_src must be positive");
    if (!(c.gain_delta > 0.0))
        throw std::invalid_argument("morrey: gain_delta must be positive");
    if (!(c.theta > 0.0 && c.theta < 1.0))
        throw std::invalid_argument("morrey: theta must lie in (0,1)");
    if (!(c.r0 > 0.0 && c.r0 <= 1.0))
        throw std::invalid_argument("morrey: r0 must lie in (0,1]");
    if (!(c.e0 >= 0.0))
        throw std::invalid_argument("morrey: e0 must be nonnegative");
    if (c.max_steps < 1)
        throw std::invalid_argument("morrey: max_steps must be positive");
}

void validate(const DeGiorgiConfig& c) {
    if (!(c.beta_dg > 0.0 && c.beta_dg < 1.0))
        throw std::invalid_argument("degiorgi: beta_dg must lie in (0,1)");
    if (!(c.lambda1 > 0.0 && c.lambda2 > 0.0))
        throw std::invalid_argument("degiorgi: lambda rates must be positive");
    if (!(c.c_big > 0.0))
        throw std::invalid_argument("degiorgi: c_big must be positive");
    if (!(c.K > 0.0))
        throw std::invalid_argument("degiorgi: K must be positive");
    if (!(c.R > 0.0))
        throw std::invalid_argument("degiorgi: R must be positive");
    if (!(c.phi_r >= 0.0))
        throw std::invalid_argument("degiorgi: phi_r must be nonnegative");
    if (!(c.y0 >= 0.0))
        throw std::invalid_argument("degiorgi: y0 must be nonnegative");
    if (c.max_steps < 1)
        throw std::invalid_argument("degiorgi: max_steps must be positive");
}

Verdict classify(double v) {
    if (!std::isfinite(v) || v > blowup_ceiling) return Verdict::diverged;
    if (v < decay_floor) return Verdict::decayed;
    return Verdict::exhausted;
}

// Shared log bisection over the starting value.  run(x) evolves the
// recursion from x; anything that does not diverge counts as below the
// threshold (the budget boundary is a measure-zero sliver here).
template <class RunFn>
double bisect_threshold(double lo, RunFn&& run, double tol,
                        const char* who) {
    if (run(lo) == Verdict::diverged) {
        throw std::invalid_argument(std::string(who) +
                                    ": no decay bracket at the lower seed");
    }
    double hi = lo > 1.0 ? 2.0 * lo : 1.0;
    int guard = 0;
    while (run(hi) != Verdict::diverged) {
        hi *= 2.0;
        if (++guard > 2100) {
            throw std::invalid_argument(std::string(who) +
                                        ": no divergence bracket found");
        }
    }
    while (hi / lo > 1.0 + tol) {
        const double mid = std::exp(0.5 * (std::log(lo) + std::log(hi)));
        if (run(mid) == Verdict::diverged) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return std::sqrt(lo * hi);
}

} // namespace

MorreyTrace morrey_run(const MorreyConfig& cfg) {
    validate(cfg);
    MorreyTrace tr;
    tr.config = cfg;
    double e = cfg.e0;
    double scale = cfg.r0;
    tr.values.push_back(e);
    tr.verdict = classify(e);
    for (int n = 0; n < cfg.max_steps && tr.verdict == Verdict::exhausted; ++n) {
        e = cfg.kappa * e + cfg.c_src * std::pow(scale, cfg.gain_delta) * e * e;
        scale *= cfg.theta;
        tr.values.push_back(e);
        tr.verdict = classify(e);
    }
    return tr;
}

double morrey_threshold(const MorreyConfig& cfg, double tol) {
    validate(MorreyConfig{cfg.kappa, cfg.c_src, cfg.gain_delta, cfg.theta,
                          cfg.r0, 0.0, cfg.max_steps});
    if (!(tol > 0.0)) throw std::invalid_argument("morrey_threshold: tol > 0");
    const double guaranteed =
        (1.0 - cfg.kappa) / (2.0 * cfg.c_src * std::pow(cfg.r0, cfg.gain_delta));
    auto run = [&](double e0) {
        MorreyConfig c = cfg;
        c.e0 = e0;
        return morrey_run(c).verdict;
    };
    return bisect_threshold(guaranteed, run, tol, "morrey_threshold");
}

DeGiorgiConfig degiorgi_config_from(const CorridorParams& params, double K,
                                    double R, double phi_r, double y0) {
    DeGiorgiConfig c;
    c.beta_dg = params.beta_dg;
    c.lambda1 = 2.0 * (1.0 + c.beta_dg);
    c.lambda2 = c.lambda1;
    c.K = K;
    c.R = R;
    c.phi_r = phi_r;
    c.y0 = y0;
    return c;
}

DeGiorgiTrace degiorgi_run(const DeGiorgiConfig& cfg) {
    validate(cfg);
    DeGiorgiTrace tr;
    tr.config = cfg;
    const double b = cfg.beta_dg;
    const double a1 = cfg.c_big * std::pow(cfg.R, -2.0) * std::pow(cfg.K, -2.0 * b);
    const double a2 = cfg.c_big * std::pow(cfg.K, 2.0 - 2.0 * b) * cfg.phi_r;
    double y = cfg.y0;
    tr.values.push_back(y);
    tr.verdict = classify(y);
    for (int j = 0; j < cfg.max_steps && tr.verdict == Verdict::exhausted; ++j) {
        // 0^beta = 0: a zero iterate is absorbing even with a tail term
        const double yb = y == 0.0 ? 0.0 : std::pow(y, b);
        y = a1 * std::pow(2.0, cfg.lambda1 * j) * yb * y +
            a2 * std::pow(2.0, cfg.lambda2 * j) * yb;
        tr.values.push_back(y);
        tr.verdict = classify(y);
    }
    return tr;
}

double degiorgi_threshold(const DeGiorgiConfig& cfg, double tol) {
    {
        DeGiorgiConfig probe = cfg;
        probe.y0 = 0.0;
        validate(probe);
    }
    if (!(tol > 0.0)) throw std::invalid_argument("degiorgi_threshold: tol > 0");
    auto run = [&](double y0) {
        DeGiorgiConfig c = cfg;
        c.y0 = y0;
        return degiorgi_run(c).verdict;
    };
    return bisect_threshold(1e-290, run, tol, "degiorgi_threshold");
}

double degiorgi_k0(double norm_h, double phi_r, double R,
                   const CorridorParams& params, double c0) {
    if (!(R > 0.0)) throw std::domain_error("degiorgi_k0: R must be positive");
    if (!(norm_h >= 0.0 && phi_r >= 0.0 && c0 >= 0.0)) {
        throw std::domain_error("degiorgi_k0: negative input");
    }
    const double n = params.n_star;
    return c0 * (std::pow(R, -0.5 * (n + 2.0)) * norm_h +
                 std::pow(R, -0.5 * n) * std::sqrt(phi_r));
}

AxisEnvelope axis_envelope(double h_bound, const CorridorParams& params,
                           double r) {
    if (!(h_bound >= 0.0))
        throw std::domain_error("axis_envelope: h_bound must be nonnegative");
    if (!(r > 0.0 && r <= 1.0))
        throw std::domain_error("axis_envelope: r must lie in (0,1]");
    AxisEnvelope e;
    e.f_bound = h_bound * std::pow(r, params.m_plus);
    e.v_bound = std::sqrt(h_bound) * std::pow(r, params.beta_star);
    return e;
}

double source_bound(double R, double sup_weighted_v, double l2_v_over_r,
                    const CorridorParams& params) {
    if (!(R > 0.0)) throw std::domain_error("source_bound: R must be positive");
    if (!(sup_weighted_v >= 0.0 && l2_v_over_r >= 0.0)) {
        throw std::domain_error("source_bound: negative norm input");
    }
    return std::pow(R, params.source_exponent) * sup_weighted_v * l2_v_over_r;
}

} // namespace meridian
