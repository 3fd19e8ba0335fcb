#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "meridian/fit.hpp"

using namespace meridian;

TEST_SUITE_BEGIN("fit");

TEST_CASE("exact line is recovered exactly") {
    const std::vector<double> xs{-2.0, -1.0, 0.5, 3.0, 7.0};
    std::vector<double> ys(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) ys[k] = 3.0 * xs[k] + 2.0;
    const auto fit = fit_linear(xs, ys);
    CHECK(fit.slope == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(fit.intercept == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(fit.max_abs_residual < 1e-13);
    CHECK(fit.n_points == 5);
}

TEST_CASE("hand-checked least squares on three points") {
    const std::vector<double> xs{0.0, 1.0, 2.0};
    const std::vector<double> ys{0.0, 1.0, 3.0};
    const auto fit = fit_linear(xs, ys);
    CHECK(fit.slope == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(fit.intercept == doctest::Approx(-1.0 / 6.0).epsilon(1e-13));
    CHECK(fit.max_abs_residual == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("log-log fit measures power laws") {
    const std::vector<double> xs{1.0, 0.5, 0.25, 0.125};
    std::vector<double> ys(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k)
        ys[k] = 5.0 * std::pow(xs[k], 2.5);
    const auto fit = fit_loglog(xs, ys);
    CHECK(fit.slope == doctest::Approx(2.5).epsilon(1e-13));
    CHECK(fit.intercept == doctest::Approx(std::log(5.0)).epsilon(1e-12));
    CHECK(fit.max_abs_residual < 1e-13);
}

TEST_CASE("input validation") {
    const std::vector<double> one{1.0};
    const std::vector<double> two{1.0, 2.0};
    const std::vector<double> flat{2.0, 2.0, 2.0};
    const std::vector<double> three{1.0, 2.0, 3.0};
    CHECK_THROWS_AS(static_cast<void>(fit_linear(one, one)),
                    std::invalid_argument);
    CHECK_THROWS_AS(static_cast<void>(fit_linear(two, one)),
                    std::invalid_argument);
    CHECK_THROWS_AS(static_cast<void>(fit_linear(flat, three)),
                    std::invalid_argument);

    const std::vector<double> xneg{1.0, -0.5, 0.25, 0.1};
    const std::vector<double> xpos{1.0, 0.5, 0.25, 0.1};
    const std::vector<double> ypos{1.0, 1.0, 1.0, 1.0};
    const std::vector<double> yzero{1.0, 0.0, 1.0, 1.0};
    CHECK_THROWS_AS(static_cast<void>(fit_loglog(xneg, ypos)),
                    std::domain_error);
    CHECK_THROWS_AS(static_cast<void>(fit_loglog(yzero, yzero)),
                    std::domain_error);
    CHECK_THROWS_AS(static_cast<void>(fit_loglog(xpos, yzero)),
                    std::domain_error);
}

TEST_SUITE_END();
