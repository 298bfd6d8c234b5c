#include "crdme/gamma_table.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "crdme/quadrature.hpp"

namespace crdme {

namespace {

// Dihedral map taking an offset into the canonical octant x >= y >= 0:
// component sign flips followed by an optional swap.
struct OctantMap {
    int sx = 1, sy = 1;
    bool swap = false;

    Vec2i apply(Vec2i v) const
    {
        Vec2i w{sx * v.x, sy * v.y};
        if (swap)
            return {w.y, w.x};
        return w;
    }
    Vec2i invert(Vec2i w) const
    {
        if (swap)
            w = {w.y, w.x};
        return {sx * w.x, sy * w.y};
    }
};

OctantMap octant_map(Vec2i d)
{
    OctantMap g;
    g.sx = d.x < 0 ? -1 : 1;
    g.sy = d.y < 0 ? -1 : 1;
    g.swap = std::abs(d.x) < std::abs(d.y);
    return g;
}

// Placement weight N(d, r): measure of reacting pairs whose midpoint falls in
// the voxel at r. With u = (x + y)/2 and w = x - y (unit Jacobian),
//   N(d, r) = integral over u in voxel(r) of |B_rho(0) ^ R(u)|,
//   R(u) = (-2u + [-1,1]^2) ^ (2(u - d) + [-1,1]^2).
double placement_weight(Vec2i d, Vec2i r, double rho, double tol)
{
    auto f = [&](double sx, double sy) {
        const double ux = r.x + sx;
        const double uy = r.y + sy;
        const double lox = std::max(-2.0 * ux - 1.0, 2.0 * (ux - d.x) - 1.0);
        const double hix = std::min(-2.0 * ux + 1.0, 2.0 * (ux - d.x) + 1.0);
        const double loy = std::max(-2.0 * uy - 1.0, 2.0 * (uy - d.y) - 1.0);
        const double hiy = std::min(-2.0 * uy + 1.0, 2.0 * (uy - d.y) + 1.0);
        if (lox >= hix || loy >= hiy)
            return 0.0;
        return circle_rect_area(Circle{{0.0, 0.0}, rho}, AxisRect{{lox, loy}, {hix, hiy}});
    };
    return integrate_unit_square(f, tol);
}

// Candidate product offsets: the midpoint support is the unit square centered
// at d/2, so voxel r overlaps it iff |r - d/2| < 1 in each component.
std::vector<Vec2i> placement_candidates(Vec2i d)
{
    auto axis = [](int c) {
        std::vector<int> out;
        if (c % 2 == 0)
            out = {c / 2};
        else
            out = {(c - 1) / 2, (c + 1) / 2};
        return out;
    };
    std::vector<Vec2i> out;
    for (int rx : axis(d.x))
        for (int ry : axis(d.y))
            out.push_back({rx, ry});
    std::sort(out.begin(), out.end());
    return out;
}

// Nudge one entry so the row, summed in storage order, is exactly 1.0.
void renormalize_exact(std::vector<GammaEntry>& entries)
{
    size_t imax = 0;
    for (size_t i = 1; i < entries.size(); ++i)
        if (entries[i].p > entries[imax].p)
            imax = i;
    for (int pass = 0; pass < 10; ++pass) {
        double s = 0.0;
        for (const GammaEntry& e : entries)
            s += e.p;
        if (s == 1.0)
            return;
        entries[imax].p += 1.0 - s;
    }
}

}  // namespace

GammaTable::GammaTable(double rho, std::map<Vec2i, GammaRow> canonical_rows)
    : rho_(rho), canonical_rows_(std::move(canonical_rows))
{
}

bool GammaTable::has(Vec2i d) const
{
    return canonical_rows_.count(octant_map(d).apply(d)) != 0;
}

GammaRow GammaTable::row(Vec2i d) const
{
    const OctantMap g = octant_map(d);
    const auto it = canonical_rows_.find(g.apply(d));
    if (it == canonical_rows_.end())
        throw std::out_of_range("GammaTable: separation outside reactive support");
    GammaRow out = it->second;
    out.d = d;
    for (GammaEntry& e : out.entries)
        e.r = g.invert(e.r);
    std::sort(out.entries.begin(), out.entries.end(),
              [](const GammaEntry& a, const GammaEntry& b) { return a.r < b.r; });
    return out;
}

Vec2i GammaTable::sample(Vec2i d, double u) const
{
    const GammaRow r = row(d);
    double acc = 0.0;
    for (const GammaEntry& e : r.entries) {
        acc += e.p;
        if (u < acc)
            return e.r;
    }
    return r.entries.back().r;
}

GammaTable build_gamma_table(const PhiTable& table, double tol)
{
    std::map<Vec2i, GammaRow> rows;
    for (const Vec2i d : table.canonical_offsets()) {
        const double phi_d = table.at(d);
        if (phi_d <= 0.0)
            continue;

        // Row sums must renormalize by < ~1e-8 relative, so scale the
        // per-integral tolerance with the row's phi. The same tolerance is
        // used to re-evaluate phi as the denominator; both approximate the
        // identical integral, keeping the residual at a few parts in 1e9.
        const double row_tol = std::max(1e-15, std::min(tol, phi_d * 1e-9));
        const double phi_ref = phi(d, table.rho(), row_tol);

        GammaRow row;
        row.d = d;
        row.phi = phi_d;
        double raw = 0.0;
        for (const Vec2i r : placement_candidates(d)) {
            const double w = placement_weight(d, r, table.rho(), row_tol);
            row.entries.push_back({r, w / phi_ref});
            raw += w / phi_ref;
        }
        row.raw_sum = raw;
        if (!(raw > 0.0))
            throw quadrature_error("build_gamma_table: placement row integrated to zero");
        for (GammaEntry& e : row.entries)
            e.p /= raw;
        renormalize_exact(row.entries);
        rows.emplace(d, std::move(row));
    }
    return GammaTable(table.rho(), std::move(rows));
}

}  // namespace crdme
