#include "crdme/lattice.hpp"

#include <stdexcept>

namespace crdme {

double hop_rate(double D, const LatticeSpec& lat)
{
    if (!(D >= 0.0))
        throw std::invalid_argument("hop_rate: D must be >= 0");
    if (lat.N < 1 || !(lat.L > 0.0))
        throw std::invalid_argument("hop_rate: need N >= 1 and L > 0");
    const double h = lat.h();
    return D / (h * h);
}

MoveList allowed_moves(Voxel v, const LatticeSpec& lat)
{
    MoveList out;
    if (v.ix > 0)
        out.target[out.count++] = {v.ix - 1, v.iy};
    if (v.ix < lat.N - 1)
        out.target[out.count++] = {v.ix + 1, v.iy};
    if (v.iy > 0)
        out.target[out.count++] = {v.ix, v.iy - 1};
    if (v.iy < lat.N - 1)
        out.target[out.count++] = {v.ix, v.iy + 1};
    return out;
}

std::vector<std::pair<Voxel, double>> reactive_partners(Voxel v, const PhiTable& table,
                                                        const LatticeSpec& lat)
{
    std::vector<std::pair<Voxel, double>> out;
    const int c = table.cutoff();
    for (int dx = -c; dx <= c; ++dx) {
        for (int dy = -c; dy <= c; ++dy) {
            const int jx = v.ix + dx;
            const int jy = v.iy + dy;
            if (!lat.contains(jx, jy))
                continue;
            const double p = table.at(dx, dy);
            if (p > 0.0)
                out.push_back({Voxel{jx, jy}, p});
        }
    }
    return out;
}

}  // namespace crdme
