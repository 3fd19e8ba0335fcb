#include "meridian/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "meridian/kernels.hpp"

namespace meridian {

std::shared_ptr<const MeridianGrid> make_grid(int nr, int nz) {
    if (nr < 2 || nz < 2) {
        throw std::invalid_argument("make_grid: need nr >= 2 and nz >= 2, got " +
                                    std::to_string(nr) + " x " + std::to_string(nz));
    }
    MeridianGrid g;
    g.nr = nr;
    g.nz = nz;
    g.hr = 1.0 / nr;
    g.hz = 2.0 / nz;
    g.r_faces.resize(nr + 1);
    for (int i = 0; i <= nr; ++i) g.r_faces[i] = static_cast<double>(i) / nr;
    g.r_faces[0] = 0.0;
    g.r_faces[nr] = 1.0;
    g.r_centers.resize(nr);
    for (int i = 0; i < nr; ++i) g.r_centers[i] = (i + 0.5) * g.hr;
    g.z_centers.resize(nz);
    for (int j = 0; j < nz; ++j) g.z_centers[j] = -1.0 + (j + 0.5) * g.hz;
    return std::make_shared<const MeridianGrid>(std::move(g));
}

std::vector<double> MeridianGrid::radial_cell_masses(double weight_power) const {
    const double ap1 = weight_power + 1.0;
    std::vector<double> m(nr);
    double lo = 0.0; // pow(0, ap1), ap1 > 0 throughout this code
    for (int i = 0; i < nr; ++i) {
        const double hi = std::pow(r_faces[i + 1], ap1);
        m[i] = (hi - lo) / ap1;
        lo = hi;
    }
    return m;
}

std::vector<double> MeridianGrid::radial_face_slabs(double weight_power) const {
    const double ap1 = weight_power + 1.0;
    std::vector<double> s(nr + 1, 0.0);
    for (int i = 1; i < nr; ++i) {
        const double lo = i == 1 ? 0.0 : (i - 0.5) * hr;
        const double hi = i == nr - 1 ? 1.0 : (i + 0.5) * hr;
        s[i] = (std::pow(hi, ap1) - std::pow(lo, ap1)) / ap1;
    }
    return s;
}

std::vector<double> MeridianGrid::z_face_thickness() const {
    std::vector<double> t(nz + 1, 0.0);
    for (int j = 1; j < nz; ++j) {
        double th = hz;
        if (j == 1) th += 0.5 * hz;
        if (j == nz - 1) th += 0.5 * hz;
        t[j] = th;
    }
    return t;
}

ScalarField zero_field(std::shared_ptr<const MeridianGrid> grid) {
    ScalarField f{std::move(grid), {}};
    f.values.assign(f.grid->cells(), 0.0);
    return f;
}

void require_same_shape(const ScalarField& a, const ScalarField& b) {
    if (a.grid->nr != b.grid->nr || a.grid->nz != b.grid->nz) {
        throw std::invalid_argument("fields live on differently shaped grids");
    }
}

double integrate(const ScalarField& f, double weight_power) {
    const MeridianGrid& g = *f.grid;
    const std::vector<double> wr = g.radial_cell_masses(weight_power);
    const double hz = g.hz;
    const int nz = g.nz;
    return kernels::block_sum(g.cells(), [&](std::size_t k) {
        return f.values[k] * wr[k / nz] * hz;
    });
}

double dirichlet_energy(const ScalarField& f, double weight_power) {
    const MeridianGrid& g = *f.grid;
    const std::vector<double> slabs = g.radial_face_slabs(weight_power);
    const std::vector<double> cellm = g.radial_cell_masses(weight_power);
    const std::vector<double> thick = g.z_face_thickness();
    const double inv_hr2 = 1.0 / (g.hr * g.hr);
    const double inv_hz2 = 1.0 / (g.hz * g.hz);
    const int nz = g.nz;

    // radial faces i = 1..nr-1, one term per z row
    const std::size_t nrad = static_cast<std::size_t>(g.nr - 1) * nz;
    const double er = kernels::block_sum(nrad, [&](std::size_t k) {
        const int i = static_cast<int>(k / nz) + 1;
        const int j = static_cast<int>(k % nz);
        const double d = f.at(i, j) - f.at(i - 1, j);
        return d * d * inv_hr2 * slabs[i] * g.hz;
    });
    // z faces j = 1..nz-1, one term per radial row
    const std::size_t nax = static_cast<std::size_t>(g.nr) * (nz - 1);
    const double ez = kernels::block_sum(nax, [&](std::size_t k) {
        const int i = static_cast<int>(k / (nz - 1));
        const int j = static_cast<int>(k % (nz - 1)) + 1;
        const double d = f.at(i, j) - f.at(i, j - 1);
        return d * d * inv_hz2 * cellm[i] * thick[j];
    });
    return er + ez;
}

SubcylinderIndex restrict_subcylinder(const SpaceTimeField& f, double rho) {
    if (!(rho > 0.0 && rho <= 1.0)) {
        throw std::domain_error("restrict_subcylinder: rho must lie in (0,1], got " +
                                std::to_string(rho));
    }
    const MeridianGrid& g = *f.grid;
    SubcylinderIndex idx;
    idx.ir_end = 0;
    while (idx.ir_end < g.nr && g.r_centers[idx.ir_end] < rho) ++idx.ir_end;
    idx.jz_begin = 0;
    while (idx.jz_begin < g.nz && !(std::abs(g.z_centers[idx.jz_begin]) < rho))
        ++idx.jz_begin;
    idx.jz_end = g.nz;
    while (idx.jz_end > idx.jz_begin &&
           !(std::abs(g.z_centers[idx.jz_end - 1]) < rho))
        --idx.jz_end;
    const double t0 = -rho * rho;
    idx.it_begin = 0;
    const int last = static_cast<int>(f.snapshots.size()) - 1;
    while (idx.it_begin < last && f.time(idx.it_begin) < t0) ++idx.it_begin;
    return idx;
}

} // namespace meridian
