#include "crdme/phi_table.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "crdme/quadrature.hpp"

namespace crdme {

double voxel_gap(Vec2i m)
{
    const double gx = std::max(0, std::abs(m.x) - 1);
    const double gy = std::max(0, std::abs(m.y) - 1);
    return std::hypot(gx, gy);
}

namespace {

// Largest separation between a point of the origin voxel and a point of the
// voxel at offset m.
double voxel_span(Vec2i m)
{
    return std::hypot(std::abs(m.x) + 1.0, std::abs(m.y) + 1.0);
}

}  // namespace

double phi(Vec2i m, double rho, double tol)
{
    if (!(rho > 0.0))
        throw std::invalid_argument("phi: rho must be positive");
    if (voxel_gap(m) >= rho)
        return 0.0;
    if (voxel_span(m) <= rho)
        return 1.0;

    const AxisRect target{{m.x - 0.5, m.y - 0.5}, {m.x + 0.5, m.y + 0.5}};
    const double v = integrate_unit_square(
        [&](double x, double y) {
            return circle_rect_area(Circle{{x, y}, rho}, target);
        },
        tol);
    return std::clamp(v, 0.0, 1.0);
}

PhiTable::PhiTable(double rho, int cutoff, std::vector<double> canonical_values)
    : rho_(rho), cutoff_(cutoff), canon_(std::move(canonical_values))
{
    if (!(rho_ > 0.0))
        throw std::invalid_argument("PhiTable: rho must be positive");
    const size_t expect = static_cast<size_t>(cutoff_ + 1) * (cutoff_ + 2) / 2;
    if (cutoff_ < 0 || canon_.size() != expect)
        throw std::invalid_argument("PhiTable: canonical value count does not match cutoff");
}

std::vector<PhiEntry> PhiTable::entries() const
{
    std::vector<PhiEntry> out;
    for (int mx = -cutoff_; mx <= cutoff_; ++mx)
        for (int my = -cutoff_; my <= cutoff_; ++my)
            if (voxel_gap({mx, my}) <= rho_)
                out.push_back({{mx, my}, at(mx, my)});
    return out;
}

std::vector<Vec2i> PhiTable::canonical_offsets() const
{
    std::vector<Vec2i> out;
    for (int mx = 0; mx <= cutoff_; ++mx)
        for (int my = 0; my <= mx; ++my)
            if (voxel_gap({mx, my}) <= rho_)
                out.push_back({mx, my});
    return out;
}

double PhiTable::support_sum() const
{
    double s = 0.0;
    for (const PhiEntry& e : entries())
        s += e.value;
    return s;
}

PhiTable build_phi_table(double rho, double tol)
{
    if (!(rho > 0.0))
        throw std::invalid_argument("build_phi_table: rho must be positive");
    // Largest axis offset that can still touch: gap (c-1) <= rho.
    const int cutoff = static_cast<int>(std::floor(rho)) + 1;
    std::vector<double> vals(static_cast<size_t>(cutoff + 1) * (cutoff + 2) / 2, 0.0);
    for (int mx = 0; mx <= cutoff; ++mx) {
        for (int my = 0; my <= mx; ++my) {
            if (voxel_gap({mx, my}) > rho)
                continue;
            vals[static_cast<size_t>(mx) * (mx + 1) / 2 + my] = phi({mx, my}, rho, tol);
        }
    }
    return PhiTable(rho, cutoff, std::move(vals));
}

McEstimate mc_phi_oracle(Vec2i m, double rho, uint64_t n, RngStream& rng)
{
    if (n < 10000)
        throw std::invalid_argument("mc_phi_oracle: need at least 1e4 samples");
    const double rho2 = rho * rho;
    uint64_t hits = 0;
    for (uint64_t i = 0; i < n; ++i) {
        const double dx = m.x + rng.uniform() - rng.uniform();
        const double dy = m.y + rng.uniform() - rng.uniform();
        if (dx * dx + dy * dy < rho2)
            ++hits;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(n))};
}

}  // namespace crdme
