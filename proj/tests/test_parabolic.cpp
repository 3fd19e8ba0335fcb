#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "meridian/fit.hpp"
#include "meridian/grid.hpp"
#include "meridian/parabolic.hpp"

using namespace meridian;

TEST_SUITE_BEGIN("parabolic");

namespace {

ScalarField smooth_initial(std::shared_ptr<const MeridianGrid> g) {
    return sample_field(std::move(g), [](double r, double z) {
        return (1.0 - r * r) * (1.0 - z * z);
    });
}

double weighted_l2(const ScalarField& f) {
    ScalarField sq = f;
    for (auto& v : sq.values) v *= v;
    return std::sqrt(integrate(sq, 3.0));
}

} // namespace

TEST_CASE("config validation") {
    const auto g = make_grid(8, 8);
    EvolutionConfig cfg;
    cfg.grid = g;
    cfg.initial = smooth_initial(g);

    cfg.dt = 0.0;
    CHECK_THROWS_AS(static_cast<void>(evolve(cfg)), std::invalid_argument);
    cfg.dt = 2.0;
    CHECK_THROWS_AS(static_cast<void>(evolve(cfg)), std::invalid_argument);
    cfg.dt = 1e-7; // below the supported floor
    CHECK_THROWS_AS(static_cast<void>(evolve(cfg)), std::invalid_argument);

    cfg.dt = 0.25;
    cfg.initial = smooth_initial(make_grid(8, 9));
    CHECK_THROWS_AS(static_cast<void>(evolve(cfg)), std::invalid_argument);

    cfg.initial = smooth_initial(g);
    cfg.alpha = 1.2;
    CHECK_THROWS_AS(static_cast<void>(evolve(cfg)), std::domain_error);
}

TEST_CASE("time mesh snaps so the final snapshot lands on zero") {
    const auto g = make_grid(8, 8);
    EvolutionConfig cfg;
    cfg.grid = g;
    cfg.initial = smooth_initial(g);
    cfg.dt = 0.3; // snaps to 1/3
    const auto w = evolve(cfg);
    CHECK(w.snapshots.size() == 4);
    CHECK(w.dt == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(w.time(w.steps()) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("flow dissipates the weighted norm and preserves positivity") {
    const auto g = make_grid(24, 24);
    EvolutionConfig cfg;
    cfg.grid = g;
    cfg.alpha = 0.8;
    cfg.dt = 0.05;
    cfg.initial = smooth_initial(g);

    for (Scheme s : {Scheme::implicit_euler, Scheme::crank_nicolson}) {
        cfg.scheme = s;
        const auto w = evolve(cfg);
        REQUIRE(w.snapshots.size() == 21);
        double prev = weighted_l2(w.snapshots[0]);
        for (std::size_t n = 1; n < w.snapshots.size(); ++n) {
            const double cur = weighted_l2(w.snapshots[n]);
            CHECK(cur <= prev * (1.0 + 1e-12));
            prev = cur;
        }
    }

    cfg.scheme = Scheme::implicit_euler;
    const auto w = evolve(cfg);
    for (const auto& snap : w.snapshots)
        for (double v : snap.values) CHECK(v >= -1e-12);
}

TEST_CASE("separable field reproduces the closed-form energy") {
    // w(r,z,t) = z * (1+t): gradient part integrates exactly, the Hardy term
    // uses exact radial moments, the time trapezoid is O(dt^2).
    const auto g = make_grid(64, 64);
    SpaceTimeField w{g, 1.0 / 32.0, {}};
    for (int n = 0; n <= 32; ++n) {
        const double t = w.time(n);
        w.snapshots.push_back(
            sample_field(g, [t](double, double z) { return z * (1.0 + t); }));
    }
    const double expected = (0.5 + 0.36 / 3.0) / 3.0; // 0.62/3 at alpha = 0.8
    CHECK(lin_energy(w, 1.0, 0.8) == doctest::Approx(expected).epsilon(5e-3));
}

TEST_CASE("localized energy is monotone in the radius") {
    const auto g = make_grid(24, 24);
    EvolutionConfig cfg;
    cfg.grid = g;
    cfg.dt = 0.05;
    cfg.initial = smooth_initial(g);
    const auto w = evolve(cfg);
    const double e25 = lin_energy(w, 0.25, cfg.alpha);
    const double e50 = lin_energy(w, 0.5, cfg.alpha);
    const double e100 = lin_energy(w, 1.0, cfg.alpha);
    CHECK(e100 > 0.0);
    CHECK(e25 <= e50);
    CHECK(e50 <= e100);
    CHECK(e50 < e100); // the outer shell carries energy
}

TEST_CASE("trivial subcylinder has zero time measure") {
    const auto g = make_grid(16, 16);
    SpaceTimeField w{g, 0.5, {}};
    for (int n = 0; n <= 2; ++n)
        w.snapshots.push_back(
            sample_field(g, [](double, double z) { return z; }));
    // rho so small that only the final snapshot qualifies: t >= -rho^2
    CHECK(lin_energy(w, 0.1, 0.8) == 0.0);
}

TEST_CASE("subcylinder ratios are exactly one at theta = 1") {
    const auto g = make_grid(16, 16);
    EvolutionConfig cfg;
    cfg.grid = g;
    cfg.dt = 0.1;
    const auto samples = contraction_samples(g, 3, 7);
    const auto rep = estimate_contraction(1.0, samples, cfg);
    REQUIRE_FALSE(rep.no_data);
    for (double r : rep.ratios) CHECK(r == 1.0);
    CHECK(rep.kappa_estimate == 1.0);
    CHECK_FALSE(rep.contraction_observed);
}

TEST_CASE("interior subcylinder contracts the energy") {
    const auto g = make_grid(24, 24);
    EvolutionConfig cfg;
    cfg.grid = g;
    cfg.dt = 0.02;
    const auto samples = contraction_samples(g, 4, 1);
    const auto rep = estimate_contraction(0.5, samples, cfg);
    REQUIRE_FALSE(rep.no_data);
    CHECK(rep.used.size() == 4);
    CHECK(rep.skipped.empty());
    for (double r : rep.ratios) {
        CHECK(r > 0.0);
        CHECK(r < 1.0);
    }
    CHECK(rep.contraction_observed);
    CHECK(rep.kappa_estimate ==
          doctest::Approx(*std::max_element(rep.ratios.begin(),
                                            rep.ratios.end()))
              .epsilon(1e-15));

    CHECK_THROWS_AS(
        static_cast<void>(estimate_contraction(0.0, samples, cfg)),
        std::domain_error);
    CHECK_THROWS_AS(
        static_cast<void>(estimate_contraction(1.5, samples, cfg)),
        std::domain_error);
}

TEST_CASE("sample family is deterministic and Dirichlet-clipped") {
    const auto g = make_grid(20, 20);
    const auto a = contraction_samples(g, 5, 99);
    const auto b = contraction_samples(g, 5, 99);
    REQUIRE(a.size() == 5);
    for (std::size_t s = 0; s < a.size(); ++s) {
        CHECK(a[s].values == b[s].values);
        for (int j = 0; j < g->nz; ++j) CHECK(a[s].at(g->nr - 1, j) == 0.0);
        for (int i = 0; i < g->nr; ++i) {
            CHECK(a[s].at(i, 0) == 0.0);
            CHECK(a[s].at(i, g->nz - 1) == 0.0);
        }
        double mag = 0.0;
        for (double v : a[s].values) mag = std::max(mag, std::abs(v));
        CHECK(mag > 1e-3);
    }
    const auto c = contraction_samples(g, 5, 100);
    CHECK(a[0].values != c[0].values);
}

TEST_CASE("the two schemes agree to first order in dt") {
    // compare at the early time t = -0.8, before the exponential decay
    // amplifies the rate mismatch between the schemes
    const auto g = make_grid(20, 20);
    EvolutionConfig cfg;
    cfg.grid = g;
    cfg.initial = smooth_initial(g);
    cfg.solver_tol = 1e-12;

    std::vector<double> dts{1.0 / 10.0, 1.0 / 20.0, 1.0 / 40.0, 1.0 / 80.0};
    std::vector<double> gaps;
    for (double dt : dts) {
        cfg.dt = dt;
        const int probe = static_cast<int>(std::lround(0.2 / dt));
        cfg.scheme = Scheme::implicit_euler;
        const auto ie = evolve(cfg);
        cfg.scheme = Scheme::crank_nicolson;
        const auto cn = evolve(cfg);
        ScalarField d = ie.snapshots[probe];
        for (std::size_t k = 0; k < d.values.size(); ++k)
            d.values[k] -= cn.snapshots[probe].values[k];
        gaps.push_back(weighted_l2(d));
    }
    const auto fit = fit_loglog(dts, gaps);
    CHECK(fit.slope > 0.8);
    CHECK(fit.slope < 1.4);
}

TEST_SUITE_END();
