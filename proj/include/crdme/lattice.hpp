#pragma once

#include <array>
#include <utility>
#include <vector>

#include "crdme/phi_table.hpp"

namespace crdme {

/// Uniform N x N voxel mesh over the square [0, L]^2 with reflecting walls.
struct LatticeSpec {
    double L = 0.2;  // domain edge, um
    int N = 1;       // voxels per edge

    double h() const { return L / N; }
    int voxel_count() const { return N * N; }
    bool contains(int ix, int iy) const { return ix >= 0 && ix < N && iy >= 0 && iy < N; }
};

struct Voxel {
    int ix = 0;
    int iy = 0;

    friend bool operator==(const Voxel& a, const Voxel& b)
    {
        return a.ix == b.ix && a.iy == b.iy;
    }
};

/// Row-major flat index, ix + N * iy.
inline int voxel_index(Voxel v, const LatticeSpec& lat) { return v.ix + lat.N * v.iy; }

/// Per-direction hop propensity D / h^2.
double hop_rate(double D, const LatticeSpec& lat);

/// In-domain neighbor targets of v, at most 4, in the fixed direction order
/// -x, +x, -y, +y. Hops across a wall are simply absent (reflecting walls).
struct MoveList {
    std::array<Voxel, 4> target;
    int count = 0;
};
MoveList allowed_moves(Voxel v, const LatticeSpec& lat);

/// Voxels j with phi_{j - i} > 0, clipped to the domain, each paired with its
/// phi value. Near a wall the lost offsets are simply dropped; the free-space
/// phi values are not renormalized.
std::vector<std::pair<Voxel, double>> reactive_partners(Voxel v, const PhiTable& table,
                                                        const LatticeSpec& lat);

}  // namespace crdme
