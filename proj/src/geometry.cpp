#include "crdme/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace crdme {

namespace {

// Relative tolerance used to discard tangential contacts. A contact whose
// chord is shorter than ~kTangentTol * r produces arcs/segments of negligible
// length whose membership (inside vs outside) is numerically ill-defined, so
// they are dropped outright.
constexpr double kTangentTol = 1e-13;

// Minimum parameter/angle gap below which a boundary piece is treated as
// zero length. Pieces this short contribute O(1e-12 * r^2) area at most.
constexpr double kPieceTol = 1e-12;

// Green's theorem, area = 1/2 * closed integral of (x dy - y dx), traversed
// counterclockwise. For a circular arc centered at the origin the term is
// r^2 * dtheta / 2; for a straight segment p -> q it is the cross product
// (p x q) / 2.
double segment_term(double px, double py, double qx, double qy)
{
    return 0.5 * (px * qy - qx * py);
}

}  // namespace

double circle_rect_area(const Circle& c, const AxisRect& rect)
{
    const double r = c.radius;
    // Work in coordinates with the circle center at the origin.
    const double x0 = rect.lo.x - c.center.x;
    const double x1 = rect.hi.x - c.center.x;
    const double y0 = rect.lo.y - c.center.y;
    const double y1 = rect.hi.y - c.center.y;

    if (!(r > 0.0) || !(x0 < x1) || !(y0 < y1))
        return 0.0;

    const double r2 = r * r;
    const double rect_area = (x1 - x0) * (y1 - y0);

    // Disjoint: nearest point of the rectangle is outside the disk.
    const double nx = std::clamp(0.0, x0, x1);
    const double ny = std::clamp(0.0, y0, y1);
    if (nx * nx + ny * ny >= r2)
        return 0.0;

    // Rectangle entirely inside the disk: farthest corner is inside.
    const double fx = std::max(-x0, x1);
    const double fy = std::max(-y0, y1);
    if (fx * fx + fy * fy <= r2)
        return rect_area;

    // Disk entirely inside the rectangle.
    if (x0 <= -r && x1 >= r && y0 <= -r && y1 >= r)
        return std::numbers::pi * r2;

    const double eps = kTangentTol * r;

    // Crossing angles of the circle with the four edge lines, restricted to
    // the actual edge extents.
    double ang[8];
    int nang = 0;
    auto cross_vertical = [&](double x) {
        const double d2 = r2 - x * x;
        if (d2 <= eps * eps)
            return;
        const double y = std::sqrt(d2);
        if (y >= y0 - eps && y <= y1 + eps)
            ang[nang++] = std::atan2(y, x);
        if (-y >= y0 - eps && -y <= y1 + eps)
            ang[nang++] = std::atan2(-y, x);
    };
    auto cross_horizontal = [&](double y) {
        const double d2 = r2 - y * y;
        if (d2 <= eps * eps)
            return;
        const double x = std::sqrt(d2);
        if (x >= x0 - eps && x <= x1 + eps)
            ang[nang++] = std::atan2(y, x);
        if (-x >= x0 - eps && -x <= x1 + eps)
            ang[nang++] = std::atan2(y, -x);
    };
    cross_vertical(x0);
    cross_vertical(x1);
    cross_horizontal(y0);
    cross_horizontal(y1);

    std::sort(ang, ang + nang);

    double area = 0.0;

    // Arc pieces: walk consecutive crossing angles (with wraparound) and keep
    // the arcs whose midpoint lies inside the rectangle.
    if (nang == 0) {
        // No transversal crossings survive the tangency filter, so the whole
        // circle is on one side; probe any boundary point.
        if (r > x0 && r < x1 && 0.0 > y0 && 0.0 < y1)
            area += std::numbers::pi * r2;
    } else {
        for (int i = 0; i < nang; ++i) {
            const double th0 = ang[i];
            const double th1 = (i + 1 < nang) ? ang[i + 1] : ang[0] + 2.0 * std::numbers::pi;
            if (th1 - th0 < kPieceTol)
                continue;
            const double thm = 0.5 * (th0 + th1);
            const double px = r * std::cos(thm);
            const double py = r * std::sin(thm);
            if (px > x0 && px < x1 && py > y0 && py < y1)
                area += 0.5 * r2 * (th1 - th0);
        }
    }

    // Edge pieces, rectangle traversed counterclockwise. Each edge is cut at
    // its circle crossings; sub-segments whose midpoint is inside the disk
    // contribute.
    auto do_edge = [&](double ax, double ay, double bx, double by) {
        double ts[4] = {0.0, 1.0};
        int nts = 2;
        if (ax == bx) {  // vertical edge, crossings at y = +-sqrt(r2 - x^2)
            const double d2 = r2 - ax * ax;
            if (d2 > eps * eps) {
                const double y = std::sqrt(d2);
                for (double yy : {y, -y}) {
                    const double t = (yy - ay) / (by - ay);
                    if (t > kPieceTol && t < 1.0 - kPieceTol)
                        ts[nts++] = t;
                }
            }
        } else {  // horizontal edge
            const double d2 = r2 - ay * ay;
            if (d2 > eps * eps) {
                const double x = std::sqrt(d2);
                for (double xx : {x, -x}) {
                    const double t = (xx - ax) / (bx - ax);
                    if (t > kPieceTol && t < 1.0 - kPieceTol)
                        ts[nts++] = t;
                }
            }
        }
        std::sort(ts, ts + nts);
        for (int i = 0; i + 1 < nts; ++i) {
            const double t0 = ts[i], t1 = ts[i + 1];
            if (t1 - t0 < kPieceTol)
                continue;
            const double tm = 0.5 * (t0 + t1);
            const double mx = ax + tm * (bx - ax);
            const double my = ay + tm * (by - ay);
            if (mx * mx + my * my < r2) {
                area += segment_term(ax + t0 * (bx - ax), ay + t0 * (by - ay),
                                     ax + t1 * (bx - ax), ay + t1 * (by - ay));
            }
        }
    };
    do_edge(x0, y0, x1, y0);  // bottom
    do_edge(x1, y0, x1, y1);  // right
    do_edge(x1, y1, x0, y1);  // top
    do_edge(x0, y1, x0, y0);  // left

    return std::clamp(area, 0.0, std::min(rect_area, std::numbers::pi * r2));
}

}  // namespace crdme
