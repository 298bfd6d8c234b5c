#pragma once

#include <cstdint>
#include <vector>

#include "crdme/rng.hpp"

namespace crdme {

struct Vec2i {
    int x = 0;
    int y = 0;

    friend bool operator==(const Vec2i& a, const Vec2i& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator<(const Vec2i& a, const Vec2i& b)
    {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    }
};

/// Shortest distance between the unit voxel at the origin and the unit voxel
/// at integer offset m (voxel centers one unit apart).
double voxel_gap(Vec2i m);

/// Volume fraction phi_m: the average, over positions x in the origin voxel,
/// of the area of the radius-rho disk around x that falls inside the voxel at
/// offset m. All lengths are in units of the voxel edge h, so rho = rb / h.
///
/// phi is exactly 0 when the voxels are farther apart than rho and exactly 1
/// when every point of the offset voxel is within rho of every point of the
/// origin voxel; otherwise it is computed by adaptive quadrature of the
/// disk/voxel intersection area to absolute tolerance tol.
double phi(Vec2i m, double rho, double tol = 1e-11);

struct PhiEntry {
    Vec2i m;
    double value;
};

/// Dense table of phi over every offset with voxel_gap(m) <= rho.
///
/// Only the canonical octant 0 <= my <= mx is stored; lookups map through the
/// dihedral symmetry of the lattice, so symmetric offsets share bitwise equal
/// values. Offsets outside the support read as exactly 0.
class PhiTable {
public:
    /// Assemble from canonical octant values; values[i] corresponds to the
    /// i-th pair (mx, my), mx = 0..cutoff, my = 0..mx, row-major. Exposed so
    /// tests and limit studies can install analytic tables.
    PhiTable(double rho, int cutoff, std::vector<double> canonical_values);

    double rho() const { return rho_; }
    int cutoff() const { return cutoff_; }

    /// phi at an arbitrary offset (0 outside the stored support).
    double at(int mx, int my) const
    {
        int a = mx < 0 ? -mx : mx;
        int b = my < 0 ? -my : my;
        if (a < b) {
            const int t = a;
            a = b;
            b = t;
        }
        if (a > cutoff_)
            return 0.0;
        return canon_[static_cast<size_t>(a) * (a + 1) / 2 + b];
    }

    double at(Vec2i m) const { return at(m.x, m.y); }

    /// Full symmetric expansion of the support, sorted lexicographically by
    /// (mx, my); includes only offsets with voxel_gap <= rho.
    std::vector<PhiEntry> entries() const;

    /// Offsets of the canonical octant with voxel_gap <= rho, lexicographic.
    std::vector<Vec2i> canonical_offsets() const;

    /// Sum of phi over the full symmetric expansion (mathematically pi rho^2).
    double support_sum() const;

private:
    double rho_;
    int cutoff_;
    std::vector<double> canon_;  // triangular, index a*(a+1)/2 + b
};

/// Build the phi table for a given rho by quadrature.
PhiTable build_phi_table(double rho, double tol = 1e-11);

struct McEstimate {
    double value;
    double std_error;  // binomial
};

/// Monte-Carlo estimate of phi_m: fraction of point pairs (x, y), x uniform
/// in the origin voxel and y uniform in the voxel at offset m, with
/// |x - y| < rho. Independent of the quadrature path; used for validation.
/// Requires n >= 10^4 samples.
McEstimate mc_phi_oracle(Vec2i m, double rho, uint64_t n, RngStream& rng);

}  // namespace crdme
