#pragma once

#include <map>
#include <vector>

#include "crdme/phi_table.hpp"

namespace crdme {

struct GammaEntry {
    Vec2i r;
    double p;
};

/// Placement distribution for one reactant separation d: the probability that
/// the product of a reaction between molecules in voxels separated by d lands
/// in the voxel at offset r from the first reactant's voxel.
struct GammaRow {
    Vec2i d;
    double phi;      // phi_d of the backing table
    double raw_sum;  // quadrature row sum before renormalization
    std::vector<GammaEntry> entries;  // sorted lexicographically by r, sums to 1
};

/// Placement table gamma(d, r), built per canonical separation and expanded
/// through the lattice symmetry on lookup: gamma(g d, g r) = gamma(d, r) for
/// every dihedral map g.
class GammaTable {
public:
    GammaTable(double rho, std::map<Vec2i, GammaRow> canonical_rows);

    double rho() const { return rho_; }

    bool has(Vec2i d) const;

    /// Row for an arbitrary separation in the support. Throws
    /// std::out_of_range when phi_d = 0 (no such separation can react).
    GammaRow row(Vec2i d) const;

    /// Draw a placement offset for separation d from a uniform variate.
    Vec2i sample(Vec2i d, double u) const;

    const std::map<Vec2i, GammaRow>& canonical_rows() const { return canonical_rows_; }

private:
    double rho_;
    std::map<Vec2i, GammaRow> canonical_rows_;
};

/// Integrate the placement densities for every row of the phi table support.
///
/// For each candidate product voxel r the weight is the measure of reactant
/// pairs (x, y), x in the origin voxel, y in the voxel at d, with |x - y|
/// < rho and midpoint (x + y)/2 inside the voxel at r. In midpoint/difference
/// coordinates that is an integral of disk/rectangle intersection areas over
/// the voxel at r, evaluated with the same adaptive quadrature as phi. Row
/// tolerances are tightened in proportion to phi_d so that even rows with
/// tiny phi renormalize by no more than ~1e-8 relative.
GammaTable build_gamma_table(const PhiTable& table, double tol = 1e-11);

}  // namespace crdme
