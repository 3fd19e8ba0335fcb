/// @file grid.hpp
/// Cell-centered tensor mesh on the meridian half-strip (0,1) x (-1,1) and
/// the weighted quadrature rules built on it.  Radial cell masses are exact
/// integrals of r^a over each slab, so constant fields integrate exactly and
/// the r = 0 face carries no flux weight: the axis needs no boundary
/// condition anywhere in the code.
#pragma once

#include <memory>
#include <vector>

namespace meridian {

struct MeridianGrid {
    int nr = 0;
    int nz = 0;
    double hr = 0.0;
    double hz = 0.0;
    std::vector<double> r_centers; // nr entries, (i + 1/2) * hr
    std::vector<double> r_faces;   // nr + 1 entries, i * hr, ends exactly 0 and 1
    std::vector<double> z_centers; // nz entries, -1 + (j + 1/2) * hz

    std::size_t cells() const { return static_cast<std::size_t>(nr) * nz; }
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(i) * nz + j;
    }

    /// Exact integral of r^weight_power over radial slab i, per unit z.
    std::vector<double> radial_cell_masses(double weight_power) const;

    /// Exact integral of r^weight_power over the dual slab of interior radial
    /// face i (entries 1..nr-1; 0 and nr are zero).  The first and last dual
    /// slabs extend to the domain ends so the slabs tile (0,1).
    std::vector<double> radial_face_slabs(double weight_power) const;

    /// Dual thickness of interior z face j (entries 1..nz-1; 0 and nz zero),
    /// ends extended so the thicknesses sum to the full height 2.
    std::vector<double> z_face_thickness() const;
};

/// Builds the mesh with nr by nz cells.  Throws std::invalid_argument unless
/// both counts are at least 2.
std::shared_ptr<const MeridianGrid> make_grid(int nr, int nz);

/// Cell values on a shared grid, radial index major.
struct ScalarField {
    std::shared_ptr<const MeridianGrid> grid;
    std::vector<double> values;

    double& at(int i, int j) { return values[grid->index(i, j)]; }
    double at(int i, int j) const { return values[grid->index(i, j)]; }
};

ScalarField zero_field(std::shared_ptr<const MeridianGrid> grid);

/// Samples f(r, z) at cell centers.
template <class F>
ScalarField sample_field(std::shared_ptr<const MeridianGrid> grid, F&& f) {
    ScalarField out{std::move(grid), {}};
    out.values.resize(out.grid->cells());
    for (int i = 0; i < out.grid->nr; ++i)
        for (int j = 0; j < out.grid->nz; ++j)
            out.values[out.grid->index(i, j)] =
                f(out.grid->r_centers[i], out.grid->z_centers[j]);
    return out;
}

/// Throws std::invalid_argument if the fields live on differently shaped grids.
void require_same_shape(const ScalarField& a, const ScalarField& b);

/// integral of f against r^weight_power dr dz, exact radial cell masses.
double integrate(const ScalarField& f, double weight_power);

/// Face-difference Dirichlet energy: integral of |grad f|^2 against
/// r^weight_power dr dz over interior faces, dual slabs end-extended.
/// Second-order for smooth fields; fields linear in z are integrated exactly.
double dirichlet_energy(const ScalarField& f, double weight_power);

/// Snapshot sequence on a uniform time mesh covering [-1, 0].
struct SpaceTimeField {
    std::shared_ptr<const MeridianGrid> grid;
    double dt = 0.0;
    std::vector<ScalarField> snapshots; // snapshots[n] at time -1 + n*dt

    double time(int n) const { return -1.0 + dt * n; }
    int steps() const { return static_cast<int>(snapshots.size()) - 1; }
};

/// Index window of the parabolic subcylinder Q_rho: cells with r < rho and
/// |z| < rho, snapshots with t >= -rho^2.  Spatial ranges are half-open;
/// the time range runs through the final snapshot.
struct SubcylinderIndex {
    int ir_end = 0;   // radial cells 0 .. ir_end-1
    int jz_begin = 0; // z cells jz_begin .. jz_end-1
    int jz_end = 0;
    int it_begin = 0; // snapshots it_begin .. last
};

/// Cell-center inclusion window for Q_rho.  Throws std::domain_error unless
/// 0 < rho <= 1.  rho = 1 selects every index.
SubcylinderIndex restrict_subcylinder(const SpaceTimeField& f, double rho);

} // namespace meridian
