#include "meridian/corridor.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace meridian {

CorridorParams derive_corridor(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::domain_error("derive_corridor: alpha must lie in (0,1), got " +
                                std::to_string(alpha));
    }
    CorridorParams p{};
    p.alpha = alpha;
    p.lambda_hardy = 1.0 - alpha * alpha;
    p.gain_delta = 4.0 * alpha - 3.0;
    p.root_delta = std::sqrt(2.0 - alpha * alpha);
    p.m_plus = 3.0 * alpha - 2.0 + p.root_delta;
    p.beta_star = 0.5 * (alpha + p.root_delta);
    p.a_weight = 1.0 + 2.0 * p.root_delta;
    p.n_star = p.a_weight + 2.0;
    p.q_star = 2.0 * (1.0 + 2.0 / p.n_star);
    p.p_star = 2.0 * p.n_star / (p.n_star - 2.0);
    p.theta_interp = p.n_star / (p.n_star + 2.0);
    p.beta_dg = 2.0 / (p.n_star + 2.0);
    p.source_exponent = 0.5 * (5.0 * alpha + p.root_delta - 2.0);
    p.annular_exponent = 0.5 + 0.6 * (p.root_delta - 1.0);
    p.in_corridor = alpha > 0.75 && alpha < 1.0;
    return p;
}

double indicial_residual(const CorridorParams& p) {
    const double lhs = p.m_plus * (p.m_plus + 4.0 - 6.0 * p.alpha);
    const double rhs = 2.0 * (1.0 - p.alpha) * (5.0 * p.alpha - 1.0);
    return std::abs(lhs - rhs);
}

std::vector<CorridorParams> exponent_table(const std::vector<double>& alphas) {
    std::vector<CorridorParams> rows;
    rows.reserve(alphas.size());
    for (std::size_t k = 0; k < alphas.size(); ++k) {
        try {
            rows.push_back(derive_corridor(alphas[k]));
        } catch (const std::domain_error& e) {
            throw std::domain_error("exponent_table: row " + std::to_string(k) +
                                    ": " + e.what());
        }
    }
    return rows;
}

} // namespace meridian
