#include "meridian/parabolic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "meridian/corridor.hpp"
#include "meridian/elliptic.hpp"
#include "meridian/kernels.hpp"
#include "meridian/rng.hpp"

namespace meridian {

namespace {

ScalarField hardy_potential(const std::shared_ptr<const MeridianGrid>& grid,
                            double lambda) {
    return sample_field(grid, [lambda](double r, double) {
        return lambda / (r * r);
    });
}

} // namespace

SpaceTimeField evolve(const EvolutionConfig& cfg) {
    if (!cfg.grid) throw std::invalid_argument("evolve: missing grid");
    if (!(cfg.dt > 0.0 && cfg.dt <= 1.0)) {
        throw std::invalid_argument("evolve: dt must lie in (0,1]");
    }
    if (cfg.initial.grid->nr != cfg.grid->nr ||
        cfg.initial.grid->nz != cfg.grid->nz) {
        throw std::invalid_argument("evolve: initial field grid mismatch");
    }
    const CorridorParams p = derive_corridor(cfg.alpha);
    const ScalarField pot = hardy_potential(cfg.grid, p.lambda_hardy);
    const WeightedOperator op = assemble_operator(cfg.grid, 3.0, &pot);

    const long long want = std::llround(1.0 / cfg.dt);
    if (want > 100000) {
        throw std::invalid_argument("evolve: dt below the supported 1e-5 floor");
    }
    const int steps = static_cast<int>(std::max<long long>(1, want));
    const double dt = 1.0 / steps;

    SpaceTimeField w;
    w.grid = cfg.grid;
    w.dt = dt;
    w.snapshots.reserve(steps + 1);
    w.snapshots.push_back(cfg.initial);
    w.snapshots.back().grid = cfg.grid;

    std::vector<double> rhs(cfg.grid->cells());
    for (int n = 0; n < steps; ++n) {
        const ScalarField& prev = w.snapshots.back();
        ScalarField next = prev; // warm start from the previous state
        try {
            if (cfg.scheme == Scheme::implicit_euler) {
                cg_solve(op, 1.0, dt, prev.values, next.values, cfg.solver_tol);
            } else {
                op.apply_shifted(1.0, -0.5 * dt, prev.values, rhs);
                cg_solve(op, 1.0, 0.5 * dt, rhs, next.values, cfg.solver_tol);
            }
        } catch (const SolveError& e) {
            throw SolveError("evolve: step " + std::to_string(n + 1) + " (t = " +
                                 std::to_string(w.time(n + 1)) + "): " + e.what(),
                             e.residual, e.iterations);
        }
        w.snapshots.push_back(std::move(next));
    }
    return w;
}

double lin_energy(const SpaceTimeField& w, double rho, double alpha) {
    const CorridorParams p = derive_corridor(alpha);
    const SubcylinderIndex idx = restrict_subcylinder(w, rho);
    const MeridianGrid& g = *w.grid;

    const std::vector<double> slabs = g.radial_face_slabs(3.0);
    const std::vector<double> cellm = g.radial_cell_masses(3.0);
    // exact slab integral of r^3 / r^2 = r for the Hardy term
    const std::vector<double> potm = g.radial_cell_masses(1.0);
    const std::vector<double> thick = g.z_face_thickness();
    const double inv_hr2 = 1.0 / (g.hr * g.hr);
    const double inv_hz2 = 1.0 / (g.hz * g.hz);

    auto spatial = [&](const ScalarField& f) {
        double er = 0.0;
        for (int i = 1; i < idx.ir_end; ++i) {
            double row = 0.0;
            for (int j = idx.jz_begin; j < idx.jz_end; ++j) {
                const double d = f.at(i, j) - f.at(i - 1, j);
                row += d * d;
            }
            er += row * inv_hr2 * slabs[i] * g.hz;
        }
        double ez = 0.0;
        for (int i = 0; i < idx.ir_end; ++i) {
            double row = 0.0;
            for (int j = idx.jz_begin + 1; j < idx.jz_end; ++j) {
                const double d = f.at(i, j) - f.at(i, j - 1);
                row += d * d * thick[j];
            }
            ez += row * inv_hz2 * cellm[i];
        }
        double pot = 0.0;
        for (int i = 0; i < idx.ir_end; ++i) {
            double row = 0.0;
            for (int j = idx.jz_begin; j < idx.jz_end; ++j) {
                const double v = f.at(i, j);
                row += v * v;
            }
            pot += row * potm[i] * g.hz;
        }
        return er + ez + p.lambda_hardy * pot;
    };

    const int last = static_cast<int>(w.snapshots.size()) - 1;
    if (idx.it_begin >= last) return 0.0; // zero time measure
    double total = 0.0;
    for (int n = idx.it_begin; n <= last; ++n) {
        const double tau =
            (n == idx.it_begin || n == last) ? 0.5 * w.dt : w.dt;
        total += tau * spatial(w.snapshots[n]);
    }
    return total;
}

ContractionReport estimate_contraction(double theta,
                                       const std::vector<ScalarField>& samples,
                                       const EvolutionConfig& cfg) {
    if (!(theta > 0.0 && theta <= 1.0)) {
        throw std::domain_error("estimate_contraction: theta must lie in (0,1]");
    }
    if (samples.empty()) {
        throw std::invalid_argument("estimate_contraction: need at least one sample");
    }
    ContractionReport rep;
    rep.theta = theta;
    for (int s = 0; s < static_cast<int>(samples.size()); ++s) {
        EvolutionConfig run = cfg;
        run.initial = samples[s];
        const SpaceTimeField w = evolve(run);
        const double full = lin_energy(w, 1.0, cfg.alpha);
        if (!(full > 0.0)) {
            rep.skipped.push_back(s);
            continue;
        }
        const double sub = lin_energy(w, theta, cfg.alpha);
        rep.used.push_back(s);
        rep.full_energy.push_back(full);
        rep.sub_energy.push_back(sub);
        rep.ratios.push_back(sub / full);
    }
    rep.no_data = rep.ratios.empty();
    if (!rep.no_data) {
        rep.kappa_estimate = rep.ratios[0];
        for (double r : rep.ratios)
            if (r > rep.kappa_estimate) rep.kappa_estimate = r;
        rep.contraction_observed = rep.kappa_estimate < 1.0;
    }
    return rep;
}

std::vector<ScalarField> contraction_samples(
    std::shared_ptr<const MeridianGrid> grid, int count, std::uint64_t seed) {
    if (count < 1) {
        throw std::invalid_argument("contraction_samples: count must be positive");
    }
    Rng rng(seed);
    std::vector<ScalarField> out;
    out.reserve(count);
    constexpr double pi = std::numbers::pi;
    for (int s = 0; s < count; ++s) {
        const int k = 1 + static_cast<int>(rng.uniform() * 3.0);
        const int m = 1 + static_cast<int>(rng.uniform() * 3.0);
        const double amp_mode = rng.normal();
        const double amp_bump = rng.normal();
        const double rc = rng.uniform(0.15, 0.85);
        const double zc = rng.uniform(-0.7, 0.7);
        const double sigma = rng.uniform(0.08, 0.25);
        ScalarField f = sample_field(grid, [=](double r, double z) {
            const double mode =
                std::sin(k * pi * (1.0 - r * r)) * std::sin(m * pi * (z + 1.0) / 2.0);
            const double d2 = (r - rc) * (r - rc) + (z - zc) * (z - zc);
            const double bump = std::exp(-d2 / (2.0 * sigma * sigma)) *
                                (1.0 - r * r) * (1.0 - z * z);
            return amp_mode * mode + amp_bump * bump;
        });
        // Dirichlet class: zero the ring adjacent to the non-axis boundary
        const MeridianGrid& g = *f.grid;
        for (int j = 0; j < g.nz; ++j) f.at(g.nr - 1, j) = 0.0;
        for (int i = 0; i < g.nr; ++i) {
            f.at(i, 0) = 0.0;
            f.at(i, g.nz - 1) = 0.0;
        }
        out.push_back(std::move(f));
    }
    return out;
}

} // namespace meridian
